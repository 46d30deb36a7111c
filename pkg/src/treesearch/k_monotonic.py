"""Composition for k-monotonic costs (8k-approximation).

The subtree holding the root is solved with the down- or up-monotonic
solver; every hanging subtree is solved recursively and its decision tree is
attached under the boundary vertex of the root subtree whose answer points
into it.  An outside target receives, inside the root subtree, exactly the
answers its boundary vertex would, so the stitched tree behaves like the
adaptive recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .down_monotonic import solve_down_monotonic
from .strategy import DecisionTree
from .tree_model import KPartition, PartitionError, RootedView, WeightedTree, induced_subtree, round_weights
from .up_monotonic import solve_up_monotonic


def exit_targets(rv: RootedView, region: Iterable[int]) -> list[tuple[int, int]]:
    """Boundary edges ``(u, v)`` with ``u`` in the region and its child ``v`` outside."""
    region = set(region)
    return [(u, c) for u in sorted(region) for c in rv.children[u] if c not in region]


@dataclass(frozen=True)
class SubSolve:
    label: object
    depth: int
    top: int
    region: tuple
    solver: str           # "down" or "up"
    bound: int            # certified cost bound of the sub-strategy, rounded weights
    parent: Optional[object] = None


@dataclass(frozen=True)
class StitchedStrategy:
    decision_tree: DecisionTree
    provenance: dict      # vertex -> (label, depth)
    solves: tuple

    @property
    def depth(self) -> int:
        return max(s.depth for s in self.solves)

    def chain_bound(self, target: int) -> int:
        """Sum of the sub-solver bounds over the regions a search for ``target`` passes."""
        by_label = {s.label: s for s in self.solves}
        s = by_label[self.provenance[target][0]]
        total = s.bound
        while s.parent is not None:
            s = by_label[s.parent]
            total += s.bound
        return total


def solve_k_monotonic(t: WeightedTree, part: KPartition) -> StitchedStrategy:
    rv = part.rooted
    if rv.base != t:
        raise PartitionError("partition belongs to a different tree")
    rt = round_weights(t)
    children: dict[int, list[int]] = {}
    provenance: dict[int, tuple] = {}
    solves: list[SubSolve] = []

    def solve(top: int, depth: int, parent=None) -> int:
        label = part.label[top]
        if depth > part.k:
            raise PartitionError(f"recursion depth {depth} exceeds k={part.k}")
        region = part.region(label)
        if any(rv.depth[v] < rv.depth[top] for v in region):
            raise PartitionError(f"class {label!r} is not entered at its top vertex")
        sub, back = induced_subtree(rt, region)
        if part.direction[label] in ("down", "both"):
            res, solver = solve_down_monotonic(sub), "down"
        else:
            res, solver = solve_up_monotonic(sub), "up"
        d = res.decision_tree
        for v, cs in d.children.items():
            children[back[v]] = [back[c] for c in cs]
            provenance[back[v]] = (label, depth)
        solves.append(SubSolve(label, depth, top, tuple(region), solver, res.bound, parent))
        for u, v in exit_targets(rv, region):
            children[u].append(solve(v, depth + 1, label))
        return back[d.root]

    root = solve(rv.root, 1)
    return StitchedStrategy(DecisionTree(root, children), provenance, tuple(solves))
