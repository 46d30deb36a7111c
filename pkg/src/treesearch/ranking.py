"""Optimal vertex ranking of unweighted trees by the vertex extension operator."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .strategy import DecisionTree, extract_decision_tree
from .tree_model import RootedView, WeightedTree, tree_path


def vertex_extension(child_seqs: Iterable[Sequence[int]]) -> tuple[int, list[int]]:
    """Rank a vertex from its children's visibility sequences.

    The rank is the least integer above every value shared by two children
    that appears in no child sequence.  The returned visibility sequence is
    the rank followed by the child values above it; smaller ones are hidden
    behind the new vertex.
    """
    seqs = [list(s) for s in child_seqs]
    counts = Counter(x for s in seqs for x in set(s))
    m = max((x for x, c in counts.items() if c >= 2), default=-1)
    rank = m + 1
    while rank in counts:
        rank += 1
    return rank, sorted([rank, *(x for x in counts if x > rank)], reverse=True)


@dataclass(frozen=True)
class RankAssignment:
    rank: dict
    seq: dict            # vertex -> decreasing visibility sequence in T_v

    def satisfies_separation(self, t: WeightedTree) -> bool:
        """Equal ranks are always separated by a strictly higher rank."""
        vs = list(self.rank)
        for i, x in enumerate(vs):
            for y in vs[i + 1:]:
                if self.rank[x] != self.rank[y]:
                    continue
                if not any(self.rank[z] > self.rank[x] for z in tree_path(t, x, y)[1:-1]):
                    return False
        return True


def rank_tree(rv: RootedView) -> RankAssignment:
    rank, seq = {}, {}
    for v in rv.postorder:
        rank[v], seq[v] = vertex_extension(seq[c] for c in rv.children[v])
    return RankAssignment(rank, seq)


def ranks_to_decision_tree(t: WeightedTree, ra: RankAssignment) -> DecisionTree:
    return extract_decision_tree(t, lambda v: ra.rank[v], ra.rank.keys())
