"""Greedy aligned intervals for down-monotonic costs.

On a rounded down-monotonic tree the greedy interval assignment is optimal;
on arbitrary down-monotonic inputs the resulting strategy is within a factor
two of optimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .strategy import DecisionTree, Interval, esf_to_decision_tree
from .tree_model import RootedView, WeightedTree, classify_monotonic, rooted, round_weights


class NotMonotonicError(ValueError):
    pass


def expand_granularity(seq: Sequence[Interval], d: int) -> list[int]:
    """Unit slots of width ``d`` covered by ``seq``, decreasing."""
    out = []
    for iv in seq:
        if iv.a % d or iv.b % d:
            raise ValueError(f"{d} does not divide the endpoints of {iv}")
        out.extend(range(iv.a // d, iv.b // d))
    return sorted(out, reverse=True)


def greedy_interval(child_seqs: Sequence[Sequence[Interval]], w: int) -> Interval:
    """Lowest ``w``-aligned slot of length ``w`` above every conflict between
    two children's visible intervals and disjoint from all of them."""
    if not child_seqs:
        return Interval(0, w)
    floor = 0   # right end of the maximal conflicting interval, or of [-1, 0)
    for i, s in enumerate(child_seqs):
        for j, s2 in enumerate(child_seqs):
            if i == j:
                continue
            for iv in s:
                if any(iv.intersects(iv2) for iv2 in s2):
                    floor = max(floor, iv.b)
    taken = [iv for s in child_seqs for iv in s]
    a = -(-floor // w) * w
    while True:
        cand = Interval(a, a + w)
        clash = [iv.b for iv in taken if iv.intersects(cand)]
        if not clash:
            return cand
        a = -(-max(clash) // w) * w


def _merge(f_v: Interval, child_seqs) -> list[Interval]:
    above = [iv for s in child_seqs for iv in s if iv.a >= f_v.b]
    return sorted([f_v, *above], key=lambda iv: -iv.a)


@dataclass(frozen=True)
class DownResult:
    f: dict                       # vertex -> Interval, on the rounded scale
    decision_tree: DecisionTree
    rounded: WeightedTree
    root: int
    seq: dict                     # vertex -> extended visibility sequence

    @property
    def bound(self) -> int:
        return max(iv.b for iv in self.f.values())


def assign_greedy(rv: RootedView) -> tuple[dict, dict]:
    f, seq = {}, {}
    for v in rv.postorder:
        kids = [seq[c] for c in rv.children[v]]
        f[v] = greedy_interval(kids, rv.weight(v))
        seq[v] = _merge(f[v], kids)
    return f, seq


def solve_down_monotonic(t: WeightedTree) -> DownResult:
    cls = classify_monotonic(t)
    if not cls.is_down:
        raise NotMonotonicError("cost function is not down-monotonic")
    root = min(cls.down_roots)
    rt = round_weights(t)
    f, seq = assign_greedy(rooted(rt, root))
    return DownResult(f, esf_to_decision_tree(rt, f), rt, root, seq)
