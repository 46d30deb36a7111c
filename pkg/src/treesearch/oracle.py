"""Exponential exact solvers used as ground truth.

``opt_cost`` runs the min-max recursion over connected candidate sets,
memoised on vertex bitmasks; ``edge_opt_cost`` does the same for the edge
query model.  ``subdivide_edge_tree`` maps an edge-weighted tree to the
vertex-weighted instance with the same optimal search cost.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable

from .strategy import DecisionTree
from .tree_model import InvalidTreeError, TreeFormatError, WeightedTree, _int, _tokens

VERTEX_CAP = 18
EDGE_CAP = 12


class OracleTooLarge(ValueError):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _split(adjmask: list[int], mask: int) -> list[int]:
    """Connected components of ``mask`` (as bitmasks), by lowest bit."""
    out = []
    while mask:
        seed = mask & -mask
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for i in _bits(frontier):
                nxt |= adjmask[i]
            nxt &= mask & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        mask &= ~comp
    return out


def opt_cost(t: WeightedTree, charge_final: bool = True) -> tuple[int, DecisionTree]:
    """Minimum worst-case search cost and an optimal decision tree.

    With ``charge_final`` (the default) a singleton candidate set still costs
    the query of its vertex; otherwise it is free, i.e. identification alone
    ends the search.  Ties between first queries go to the least vertex id.
    """
    if t.n > VERTEX_CAP:
        raise OracleTooLarge(f"exact oracle is capped at {VERTEX_CAP} vertices (got {t.n})")
    n = t.n
    w = [t.weight[i + 1] for i in range(n)]
    adjmask = [0] * n
    for u, v in t.edges:
        adjmask[u - 1] |= 1 << (v - 1)
        adjmask[v - 1] |= 1 << (u - 1)
    memo: dict[int, tuple[int, int]] = {}

    def cost(mask: int) -> int:
        hit = memo.get(mask)
        if hit is not None:
            return hit[0]
        if mask & (mask - 1) == 0:
            i = mask.bit_length() - 1
            memo[mask] = (w[i] if charge_final else 0, i)
            return memo[mask][0]
        best, arg = None, -1
        for i in _bits(mask):
            c = w[i]
            if best is not None and c >= best:
                continue
            for comp in _split(adjmask, mask & ~(1 << i)):
                c = max(c, w[i] + cost(comp))
                if best is not None and c >= best:
                    break
            if best is None or c < best:
                best, arg = c, i
        memo[mask] = (best, arg)
        return best

    full = (1 << n) - 1
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10 * n + 100))
    try:
        total = cost(full)
    finally:
        sys.setrecursionlimit(limit)

    children: dict[int, list[int]] = {}
    stack = [full]
    root = memo[full][1] + 1
    while stack:
        mask = stack.pop()
        q = memo[mask][1]
        children[q + 1] = []
        for comp in _split(adjmask, mask & ~(1 << q)):
            cost(comp)
            children[q + 1].append(memo[comp][1] + 1)
            stack.append(comp)
    return total, DecisionTree(root, children)


# --------------------------------------------------------------------------
# Edge search


@dataclass(frozen=True)
class EdgeWeightedTree:
    n: int
    cost: dict          # (u, v) with u < v -> positive integer

    def __post_init__(self):
        if self.n < 1:
            raise InvalidTreeError("edge tree needs at least one vertex")
        if len(self.cost) != self.n - 1:
            raise InvalidTreeError(f"a tree on {self.n} vertices needs {self.n - 1} edges")
        for (u, v), c in self.cost.items():
            if not (1 <= u < v <= self.n):
                raise InvalidTreeError(f"bad edge ({u}, {v})")
            if c < 1:
                raise InvalidTreeError(f"edge ({u}, {v}) has non-positive cost")
        # connectivity via the vertex-weighted constructor
        WeightedTree({v: 1 for v in range(1, self.n + 1)}, self.cost.keys())

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]]) -> "EdgeWeightedTree":
        return cls(n, {(min(u, v), max(u, v)): c for u, v, c in edges})

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.cost)


def parse_edge_tree(text: str) -> EdgeWeightedTree:
    """Parse the edge-weighted variant (``etree``/``vertex``/``eweight``)."""
    n = None
    seen: set[int] = set()
    cost: dict[tuple[int, int], int] = {}
    for lineno, tok in _tokens(text):
        if n is None:
            if tok[0] != "etree" or len(tok) != 2:
                raise TreeFormatError("expected header 'etree <n>'", lineno)
            n = _int(tok[1], lineno)
            continue
        if tok[0] == "vertex" and len(tok) == 2:
            v = _int(tok[1], lineno)
            if not 1 <= v <= n or v in seen:
                raise TreeFormatError(f"bad or duplicate vertex id {v}", lineno)
            seen.add(v)
        elif tok[0] == "eweight" and len(tok) == 4:
            u, v, c = (_int(x, lineno) for x in tok[1:])
            for x in (u, v):
                if x not in seen:
                    raise TreeFormatError(f"unknown vertex {x}", lineno)
            if c < 1:
                raise TreeFormatError(f"non-positive edge cost {c}", lineno)
            e = (min(u, v), max(u, v))
            if u == v or e in cost:
                raise TreeFormatError(f"duplicate or self edge {u} {v}", lineno)
            cost[e] = c
        else:
            raise TreeFormatError(f"unexpected line {' '.join(tok)!r}", lineno)
    if n is None:
        raise TreeFormatError("empty input")
    if len(seen) != n:
        raise TreeFormatError(f"expected {n} vertex lines, got {len(seen)}")
    try:
        return EdgeWeightedTree(n, cost)
    except InvalidTreeError as exc:
        raise TreeFormatError(str(exc)) from None


def serialize_edge_tree(et: EdgeWeightedTree) -> str:
    lines = [f"etree {et.n}"]
    lines += [f"vertex {v}" for v in range(1, et.n + 1)]
    lines += [f"eweight {u} {v} {et.cost[(u, v)]}" for u, v in et.edges]
    return "\n".join(lines) + "\n"


def subdivide_edge_tree(et: EdgeWeightedTree) -> WeightedTree:
    """Heavy original vertices (``1 + sum of costs``) plus one midpoint per
    edge carrying that edge's cost.  Edge ``i`` (sorted order) becomes vertex
    ``n + i + 1``."""
    big = 1 + sum(et.cost.values())
    weight = {v: big for v in range(1, et.n + 1)}
    edges = []
    for i, (u, v) in enumerate(et.edges):
        mid = et.n + i + 1
        weight[mid] = et.cost[(u, v)]
        edges += [(u, mid), (mid, v)]
    return WeightedTree(weight, edges)


def edge_opt_cost(et: EdgeWeightedTree) -> int:
    """Optimal worst-case cost of locating a vertex by edge queries."""
    if et.n - 1 > EDGE_CAP:
        raise OracleTooLarge(f"edge oracle is capped at {EDGE_CAP} edges (got {et.n - 1})")
    n = et.n
    adjmask = [0] * n
    edges = []
    for (u, v), c in et.cost.items():
        adjmask[u - 1] |= 1 << (v - 1)
        adjmask[v - 1] |= 1 << (u - 1)
        edges.append((u - 1, v - 1, c))
    memo: dict[int, int] = {}

    def cost(mask: int) -> int:
        if mask & (mask - 1) == 0:
            return 0
        hit = memo.get(mask)
        if hit is not None:
            return hit
        best = None
        for u, v, c in edges:
            if not (mask >> u & 1 and mask >> v & 1):
                continue
            if best is not None and c >= best:
                continue
            sides = _split(adjmask_without(u, v), mask)
            val = c + max(cost(s) for s in sides)
            if best is None or val < best:
                best = val
        memo[mask] = best
        return best

    def adjmask_without(u, v):
        am = list(adjmask)
        am[u] &= ~(1 << v)
        am[v] &= ~(1 << u)
        return am

    return cost((1 << n) - 1)
