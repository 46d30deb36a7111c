"""Intervals, extended strategy functions, decision trees and simulation.

An extended strategy function (ESF) is a plain ``dict`` mapping each vertex
to an :class:`Interval`; its key set is its scope.  Decision trees are
:class:`DecisionTree` objects whose node set may be any connected subset of
the searched tree (restricted trees live on subsets).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, NamedTuple, Optional

from .tree_model import RootedView, WeightedTree, components, is_connected, tree_path


@dataclass(frozen=True)
class Interval:
    """Half-open integer interval ``[a, b)``."""

    a: int
    b: int

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"empty interval [{self.a}, {self.b})")

    @property
    def length(self) -> int:
        return self.b - self.a

    def intersects(self, other: "Interval") -> bool:
        return self.a < other.b and other.a < self.b

    def shift(self, c: int) -> "Interval":
        return Interval(self.a + c, self.b + c)

    def __repr__(self):
        return f"[{self.a},{self.b})"


def interval_precedes(i: Interval, j: Interval) -> bool:
    """``i < j``: ``j`` starts at or after the end of ``i``."""
    return i.b <= j.a


def _cells(seq) -> set[int]:
    """Unit cells covered by a sequence of intervals or of integers."""
    out = set()
    for x in seq:
        if isinstance(x, Interval):
            out.update(range(x.a, x.b))
        else:
            out.add(int(x))
    return out


def lex_less(s, s2) -> bool:
    """The bottom-up order ``<_l`` on disjoint interval sequences.

    Unit cells ``[i, i+1)`` are scanned upward; ``s`` is smaller when at the
    first cell covered by exactly one of the two, ``s`` is the uncovered one.
    Integer sequences are read as sets of unit cells.
    """
    c1, c2 = _cells(s), _cells(s2)
    diff = c1 ^ c2
    if not diff:
        return False
    return min(diff) in c2


def desc_lex_less(s, s2) -> bool:
    """Classic lexicographic order of decreasing sequences, compared on cell
    coverage from the top down (``[1] < [1, 0] < [2]``)."""
    c1, c2 = _cells(s), _cells(s2)
    diff = c1 ^ c2
    if not diff:
        return False
    return max(diff) in c2


# --------------------------------------------------------------------------
# Decision trees


class DecisionTree:
    """Rooted tree over (a connected subset of) ``V(T)``.

    ``children[v]`` lists the next query for each possible non-``found``
    answer at ``v``, sorted by vertex id.
    """

    __slots__ = ("root", "children", "parent")

    def __init__(self, root: int, children: Mapping[int, Iterable[int]]):
        self.root = root
        self.children = {v: tuple(sorted(cs)) for v, cs in children.items()}
        self.children.setdefault(root, ())
        parent = {root: None}
        for v, cs in self.children.items():
            for c in cs:
                if c in parent:
                    raise ValueError(f"node {c} has two parents")
                parent[c] = v
        for c in parent:
            self.children.setdefault(c, ())
        if len(parent) != len(self.children):
            raise ValueError("decision tree is not connected to its root")
        self.parent = parent

    @classmethod
    def from_parents(cls, root: int, parent: Mapping[int, Optional[int]]) -> "DecisionTree":
        children: dict[int, list[int]] = {v: [] for v in parent}
        children.setdefault(root, [])
        for v, p in parent.items():
            if p is not None:
                children.setdefault(p, []).append(v)
        return cls(root, children)

    @property
    def nodes(self) -> frozenset:
        return frozenset(self.children)

    def __len__(self):
        return len(self.children)

    def __eq__(self, other):
        if not isinstance(other, DecisionTree):
            return NotImplemented
        return self.root == other.root and self.children == other.children

    def __repr__(self):
        return f"DecisionTree(root={self.root}, parent={dict(sorted(self.parent.items()))})"

    def preorder(self, start: Optional[int] = None) -> list[int]:
        out, stack = [], [self.root if start is None else start]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.children[u]))
        return out

    def subtree(self, v: int) -> "DecisionTree":
        keep = self.preorder(v)
        return DecisionTree(v, {u: self.children[u] for u in keep})

    def depth(self) -> int:
        best, stack = 0, [(self.root, 1)]
        while stack:
            u, d = stack.pop()
            best = max(best, d)
            stack.extend((c, d + 1) for c in self.children[u])
        return best

    def candidate_sets(self, t: WeightedTree) -> dict[int, frozenset]:
        """``A(v)``: vertices that may still hold the target when ``v`` is queried.

        Raises ``ValueError`` if the tree is not a valid decision tree for
        ``T[nodes]``.
        """
        cand = {self.root: self.nodes}
        for v in self.preorder():
            comps = [c for c in components(t, cand[v] - {v})]
            kids = self.children[v]
            if len(comps) != len(kids):
                raise ValueError(f"node {v}: {len(kids)} children for {len(comps)} components")
            for c in kids:
                owner = [comp for comp in comps if c in comp]
                if not owner:
                    raise ValueError(f"child {c} of {v} lies outside A({v})")
                cand[c] = owner[0]
            if len({cand[c] for c in kids}) != len(kids):
                raise ValueError(f"two children of {v} share a component")
        return cand

    def validate(self, t: WeightedTree, full: bool = True) -> None:
        if full and self.nodes != frozenset(t.vertices):
            raise ValueError("decision tree nodes differ from V(T)")
        if not is_connected(t, self.nodes):
            raise ValueError("decision tree node set is not connected in T")
        self.candidate_sets(t)

    def is_valid(self, t: WeightedTree, full: bool = True) -> bool:
        try:
            self.validate(t, full)
        except ValueError:
            return False
        return True


def extract_decision_tree(t: WeightedTree, key: Callable[[int], object],
                          vertices: Optional[Iterable[int]] = None) -> DecisionTree:
    """Query, in each candidate set, the unique vertex maximising ``key``."""
    vs = frozenset(t.vertices if vertices is None else vertices)
    children: dict[int, list[int]] = {}

    def pick(cand):
        best = max(cand, key=key)
        kb = key(best)
        ties = [u for u in cand if key(u) == kb]
        if len(ties) > 1:
            raise AssertionError(f"maximum not unique in candidate set: {sorted(ties)}")
        return best

    root = pick(vs)
    stack = [(root, vs)]
    while stack:
        q, cand = stack.pop()
        children[q] = []
        for comp in components(t, cand - {q}):
            c = pick(comp)
            children[q].append(c)
            stack.append((c, comp))
    return DecisionTree(root, children)


# --------------------------------------------------------------------------
# Extended strategy functions


class EsfVerdict(NamedTuple):
    valid: bool
    pair: Optional[tuple] = None
    reason: str = ""

    def __bool__(self):
        return self.valid


def validate_esf(t: WeightedTree, f: Mapping[int, Interval],
                 weight: Optional[Mapping[int, int]] = None) -> EsfVerdict:
    """Check the separation property pairwise (O(n^2 * diameter))."""
    weight = t.weight if weight is None else weight
    missing = set(t.vertices) - set(f)
    if missing:
        raise ValueError(f"f is not defined on {sorted(missing)}")
    for v in t.vertices:
        if f[v].length < weight[v]:
            return EsfVerdict(False, (v, v), f"|f({v})| < w({v})")
    vs = list(t.vertices)
    for i, x in enumerate(vs):
        for y in vs[i + 1:]:
            if not f[x].intersects(f[y]):
                continue
            top = max(f[x].b, f[y].b)
            if not any(f[z].a >= top for z in tree_path(t, x, y)[1:-1]):
                return EsfVerdict(False, (x, y), f"no separator between {x} and {y}")
    return EsfVerdict(True)


def esf_to_decision_tree(t: WeightedTree, f: Mapping[int, Interval]) -> DecisionTree:
    """Decision tree querying the maximal interval of each candidate set."""
    return extract_decision_tree(t, lambda v: f[v].b)


def decision_tree_to_esf(t: WeightedTree, d: DecisionTree,
                         weight: Optional[Mapping[int, int]] = None) -> dict[int, Interval]:
    """Subtrees first; the query then gets ``[sup below, sup below + w(q))``."""
    weight = t.weight if weight is None else weight
    f: dict[int, Interval] = {}
    top: dict[int, int] = {}
    for q in reversed(d.preorder()):
        sup = max((top[c] for c in d.children[q]), default=0)
        f[q] = Interval(sup, sup + weight[q])
        top[q] = f[q].b
    return f


def decision_tree_cost(d: DecisionTree, w: Mapping[int, int]) -> int:
    """Heaviest root-to-leaf path of ``d`` under the weights ``w``."""
    best = {}
    for q in reversed(d.preorder()):
        best[q] = w[q] + max((best[c] for c in d.children[q]), default=0)
    return best[d.root]


def restrict_decision_tree(t: WeightedTree, d: DecisionTree, sub: Iterable[int]) -> DecisionTree:
    """Decision tree for ``T[sub]`` obtained by splicing non-members out of ``d``."""
    sub = frozenset(sub)
    if not is_connected(t, sub):
        raise ValueError("restriction target is not connected")
    if not sub <= d.nodes:
        raise ValueError("restriction target is not inside the decision tree")
    hits = {}
    for q in reversed(d.preorder()):
        hits[q] = (q in sub) or any(hits[c] for c in d.children[q])
    children: dict[int, list[int]] = {}

    def descend(q):
        # first member of sub on the unique branch that still meets sub
        while q not in sub:
            (q,) = [c for c in d.children[q] if hits[c]]
        return q

    root = descend(d.root)
    stack = [root]
    while stack:
        q = stack.pop()
        children[q] = [descend(c) for c in d.children[q] if hits[c]]
        stack.extend(children[q])
    return DecisionTree(root, children)


# --------------------------------------------------------------------------
# Simulation


class Query(NamedTuple):
    vertex: int
    cost: int
    answer: Optional[int]   # None means "found", else the neighbour towards the target


@dataclass(frozen=True)
class SimulationTrace:
    target: int
    queries: tuple

    @property
    def total_cost(self) -> int:
        return sum(q.cost for q in self.queries)

    def format(self) -> str:
        lines = []
        for q in self.queries:
            ans = "found" if q.answer is None else f"toward {q.answer}"
            lines.append(f"query {q.vertex} {q.cost} {ans}")
        lines.append(f"total {self.total_cost}")
        return "\n".join(lines) + "\n"


def oracle_answer(t: WeightedTree, q: int, target: int) -> Optional[int]:
    if q == target:
        return None
    return tree_path(t, q, target)[1]


def simulate(t: WeightedTree, d: DecisionTree, target: int,
             weight: Optional[Mapping[int, int]] = None) -> SimulationTrace:
    weight = t.weight if weight is None else weight
    if target not in d.nodes:
        raise ValueError(f"target {target} is not a node of the decision tree")
    cand = d.candidate_sets(t)
    q = d.root
    out = []
    while True:
        ans = oracle_answer(t, q, target)
        out.append(Query(q, weight[q], ans))
        if ans is None:
            return SimulationTrace(target, tuple(out))
        (q,) = [c for c in d.children[q] if target in cand[c]]


# --------------------------------------------------------------------------
# Visibility and screening


def visibility_sequence(rv: RootedView, f: Mapping[int, Interval], v: int) -> list[Interval]:
    """Intervals visible from ``v`` inside ``T_v``, in decreasing order.

    ``u`` is hidden when some vertex on the ``u``-``v`` path, ``v`` included,
    carries an interval strictly above ``f(u)``.
    """
    out = []
    # carry the largest left endpoint seen on the path from v down to the parent
    stack = [(v, None)]
    while stack:
        u, block = stack.pop()
        if block is None or f[u].b > block:
            out.append(f[u])
        nb = f[u].a if block is None else max(block, f[u].a)
        stack.extend((c, nb) for c in rv.children[u] if c in f)
    out.sort(key=lambda i: -i.a)
    return out


def screening_vertices(t: WeightedTree, f: Mapping[int, Interval], v: int) -> set[int]:
    return _screen_walk(t, f, v)[1]


def _screen_walk(t, f, v):
    region, screens = {v}, set()
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in t.adj[u]:
            if w in region:
                continue
            region.add(w)
            if interval_precedes(f[v], f[w]):
                screens.add(w)
            else:
                queue.append(w)
    return region, screens


def screening_neighborhood(t: WeightedTree, f: Mapping[int, Interval], v: int) -> set[int]:
    """``v`` plus every vertex reachable without passing a vertex screening ``v``
    (screening vertices themselves included)."""
    region, screens = _screen_walk(t, f, v)
    scr = sorted(screens)
    for i, s in enumerate(scr):
        for s2 in scr[i + 1:]:
            assert not f[s].intersects(f[s2]), f"screening vertices {s}, {s2} overlap"
    return region


# --------------------------------------------------------------------------
# DTREE v1


class DecisionTreeFormatError(ValueError):
    pass


def format_dtree(d: DecisionTree) -> str:
    lines = [f"dtree {len(d)} {d.root}"]
    lines += [f"dnode {v} {d.parent[v]}" for v in sorted(d.nodes) if v != d.root]
    return "\n".join(lines) + "\n"


def parse_dtree(text: str) -> DecisionTree:
    header = None
    parent: dict[int, Optional[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        try:
            if header is None:
                if tok[0] != "dtree" or len(tok) != 3:
                    raise DecisionTreeFormatError(f"line {lineno}: expected 'dtree <n> <root>'")
                header = (int(tok[1]), int(tok[2]))
                parent[header[1]] = None
            elif tok[0] == "dnode" and len(tok) == 3:
                v, p = int(tok[1]), int(tok[2])
                if v in parent:
                    raise DecisionTreeFormatError(f"line {lineno}: node {v} listed twice")
                parent[v] = p
            else:
                raise DecisionTreeFormatError(f"line {lineno}: expected 'dnode <v> <parent>'")
        except ValueError as exc:
            if isinstance(exc, DecisionTreeFormatError):
                raise
            raise DecisionTreeFormatError(f"line {lineno}: expected integers") from None
    if header is None:
        raise DecisionTreeFormatError("empty decision tree file")
    n, root = header
    if len(parent) != n:
        raise DecisionTreeFormatError(f"expected {n} nodes, got {len(parent)}")
    unknown = {p for p in parent.values() if p is not None} - set(parent)
    if unknown:
        raise DecisionTreeFormatError(f"unknown parent ids {sorted(unknown)}")
    try:
        return DecisionTree.from_parents(root, parent)
    except ValueError as exc:
        raise DecisionTreeFormatError(str(exc)) from None
