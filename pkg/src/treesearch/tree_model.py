"""Node-weighted trees: construction, TREEW text format, rounding, rooting,
monotonicity classification, layer decomposition and k-monotonic partitions.

Vertices are the integers ``1..n``.  Children are always listed in ascending
vertex id so that every algorithm built on top of a :class:`RootedView` is
deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Optional

INT64_MAX = 2**63 - 1


class TreeFormatError(ValueError):
    """Malformed TREEW / ETREE input.  ``lineno`` is 1-based (0 if global)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno else ""
        super().__init__(prefix + message)


class InvalidTreeError(ValueError):
    pass


class WeightedTree:
    """Undirected tree on vertices ``1..n`` with positive integer weights."""

    __slots__ = ("n", "weight", "edges", "adj")

    def __init__(self, weight: Mapping[int, int], edges: Iterable[tuple[int, int]]):
        weight = {int(v): int(w) for v, w in weight.items()}
        n = len(weight)
        if set(weight) != set(range(1, n + 1)):
            raise InvalidTreeError("vertex ids must be exactly 1..n")
        for v, w in weight.items():
            if w < 1:
                raise InvalidTreeError(f"vertex {v} has non-positive weight {w}")
            if w > INT64_MAX:
                raise InvalidTreeError(f"vertex {v} weight exceeds 64-bit range")
        norm = set()
        for u, v in edges:
            if u not in weight or v not in weight:
                raise InvalidTreeError(f"edge ({u}, {v}) references an unknown vertex")
            if u == v:
                raise InvalidTreeError(f"self-loop at {u}")
            e = (min(u, v), max(u, v))
            if e in norm:
                raise InvalidTreeError(f"duplicate edge {e}")
            norm.add(e)
        if len(norm) != n - 1:
            raise InvalidTreeError(f"a tree on {n} vertices needs {n - 1} edges, got {len(norm)}")
        adj: dict[int, list[int]] = {v: [] for v in weight}
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.weight = weight
        self.edges = tuple(sorted(norm))
        self.adj = {v: tuple(sorted(nb)) for v, nb in adj.items()}
        if n and len(_reach(self.adj, 1)) != n:
            raise InvalidTreeError("graph is not connected")

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def with_weights(self, weight: Mapping[int, int]) -> "WeightedTree":
        return WeightedTree(weight, self.edges)

    def __eq__(self, other):
        if not isinstance(other, WeightedTree):
            return NotImplemented
        return self.weight == other.weight and self.edges == other.edges

    def __hash__(self):
        return hash((tuple(sorted(self.weight.items())), self.edges))

    def __repr__(self):
        return f"WeightedTree(n={self.n}, weight={self.weight}, edges={list(self.edges)})"


def _reach(adj, start, allowed=None) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen and (allowed is None or w in allowed):
                seen.add(w)
                stack.append(w)
    return seen


def components(t: WeightedTree, vertices: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of ``T[vertices]``, ordered by smallest member."""
    left = set(vertices)
    out = []
    while left:
        s = min(left)
        comp = _reach(t.adj, s, left)
        left -= comp
        out.append(frozenset(comp))
    out.sort(key=min)
    return out


def is_connected(t: WeightedTree, vertices: Iterable[int]) -> bool:
    vs = set(vertices)
    return bool(vs) and len(components(t, vs)) == 1


def tree_path(t: WeightedTree, u: int, v: int) -> list[int]:
    """Vertices on the unique ``u``-``v`` path, endpoints included."""
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in t.adj[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return path[::-1]


def induced_subtree(t: WeightedTree, vertices: Iterable[int]) -> tuple[WeightedTree, dict[int, int]]:
    """Relabel the connected set ``vertices`` to ``1..m``.

    Returns the subtree and the map from new ids back to the original ones
    (new ids follow ascending original id).
    """
    vs = sorted(set(vertices))
    if not is_connected(t, vs):
        raise InvalidTreeError("vertex subset is not connected")
    new_of = {v: i + 1 for i, v in enumerate(vs)}
    sub = WeightedTree(
        {new_of[v]: t.weight[v] for v in vs},
        [(new_of[a], new_of[b]) for a, b in t.edges if a in new_of and b in new_of],
    )
    return sub, {i: v for v, i in new_of.items()}


# --------------------------------------------------------------------------
# TREEW v1


class ParsedTree(NamedTuple):
    tree: WeightedTree
    root: Optional[int]
    part: Optional[dict[int, str]]


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise TreeFormatError(f"expected an integer, got {tok!r}", lineno) from None


def parse_tree(text: str) -> ParsedTree:
    """Parse a TREEW v1 document (``tree``/``vertex``/``edge``/``root``/``part``)."""
    n = None
    weight: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    seen_edges: set[tuple[int, int]] = set()
    root = None
    part: dict[int, str] = {}
    root_line = 0
    for lineno, tok in _tokens(text):
        kw = tok[0]
        if n is None:
            if kw != "tree" or len(tok) != 2:
                raise TreeFormatError("expected header 'tree <n>'", lineno)
            n = _int(tok[1], lineno)
            if n < 1:
                raise TreeFormatError("vertex count must be positive", lineno)
            continue
        if kw == "vertex":
            if len(tok) != 3:
                raise TreeFormatError("expected 'vertex <id> <weight>'", lineno)
            v, w = _int(tok[1], lineno), _int(tok[2], lineno)
            if not 1 <= v <= n:
                raise TreeFormatError(f"vertex id {v} outside 1..{n}", lineno)
            if v in weight:
                raise TreeFormatError(f"duplicate vertex id {v}", lineno)
            if w < 1:
                raise TreeFormatError(f"non-positive weight {w} for vertex {v}", lineno)
            if w > INT64_MAX:
                raise TreeFormatError(f"weight of vertex {v} exceeds 64-bit range", lineno)
            weight[v] = w
        elif kw == "edge":
            if len(tok) != 3:
                raise TreeFormatError("expected 'edge <u> <v>'", lineno)
            u, v = _int(tok[1], lineno), _int(tok[2], lineno)
            for x in (u, v):
                if x not in weight:
                    raise TreeFormatError(f"unknown vertex {x}", lineno)
            e = (min(u, v), max(u, v))
            if u == v or e in seen_edges:
                raise TreeFormatError(f"duplicate or self edge {u} {v}", lineno)
            seen_edges.add(e)
            edges.append(e)
            if len(edges) > n - 1:
                raise TreeFormatError("too many edges: graph has a cycle", lineno)
        elif kw == "root":
            if len(tok) != 2:
                raise TreeFormatError("expected 'root <id>'", lineno)
            if root is not None:
                raise TreeFormatError("root given more than once", lineno)
            root = _int(tok[1], lineno)
            root_line = lineno
        elif kw == "part":
            if len(tok) != 3:
                raise TreeFormatError("expected 'part <id> <label>'", lineno)
            v = _int(tok[1], lineno)
            if v in part:
                raise TreeFormatError(f"vertex {v} labelled twice", lineno)
            part[v] = tok[2]
        else:
            raise TreeFormatError(f"unknown keyword {kw!r}", lineno)
    if n is None:
        raise TreeFormatError("empty input")
    if len(weight) != n:
        raise TreeFormatError(f"expected {n} vertex lines, got {len(weight)}")
    if len(edges) != n - 1:
        raise TreeFormatError(f"expected {n - 1} edge lines, got {len(edges)}")
    try:
        tree = WeightedTree(weight, edges)
    except InvalidTreeError as exc:
        raise TreeFormatError(str(exc)) from None
    if root is not None and root not in weight:
        raise TreeFormatError(f"unknown vertex {root}", root_line)
    if part and set(part) != set(weight):
        raise TreeFormatError("part annotations must cover every vertex exactly once")
    return ParsedTree(tree, root, part or None)


def serialize_tree(t: WeightedTree, root: Optional[int] = None,
                   part: Optional[Mapping[int, object]] = None) -> str:
    lines = [f"tree {t.n}"]
    lines += [f"vertex {v} {t.weight[v]}" for v in t.vertices]
    lines += [f"edge {u} {v}" for u, v in t.edges]
    if root is not None:
        lines.append(f"root {root}")
    if part:
        lines += [f"part {v} {part[v]}" for v in t.vertices]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Rounding and rooting


def next_power_of_two(w: int) -> int:
    if w < 1:
        raise ValueError("weight must be positive")
    p = 1 << (w - 1).bit_length()
    if p > INT64_MAX:
        raise OverflowError(f"rounding {w} overflows 64-bit weights")
    return p


def is_power_of_two(w: int) -> bool:
    return w >= 1 and w & (w - 1) == 0


def round_weights(t: WeightedTree) -> WeightedTree:
    """Replace every weight by the least power of two not below it."""
    return t.with_weights({v: next_power_of_two(w) for v, w in t.weight.items()})


def is_rounded(t: WeightedTree) -> bool:
    return all(is_power_of_two(w) for w in t.weight.values())


@dataclass(frozen=True)
class RootedView:
    base: WeightedTree
    root: int
    parent: dict
    children: dict
    postorder: tuple
    depth: dict

    def weight(self, v: int) -> int:
        return self.base.weight[v]

    def subtree(self, v: int) -> list[int]:
        """Vertices of ``T_v`` in preorder."""
        out, stack = [], [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.children[u]))
        return out

    @property
    def preorder(self) -> list[int]:
        return self.subtree(self.root)

    def ancestors(self, v: int) -> list[int]:
        """``v`` and its ancestors, bottom-up."""
        out = [v]
        while self.parent[out[-1]] is not None:
            out.append(self.parent[out[-1]])
        return out


def rooted(t: WeightedTree, root: int) -> RootedView:
    if root not in t.weight:
        raise InvalidTreeError(f"root {root} is not a vertex")
    parent = {root: None}
    depth = {root: 0}
    order = [root]
    for u in order:
        for w in t.adj[u]:
            if w not in parent:
                parent[w] = u
                depth[w] = depth[u] + 1
                order.append(w)
    children = {v: tuple(w for w in t.adj[v] if parent.get(w) == v and w != parent[v]) for v in t.vertices}
    post = []
    stack = [(root, False)]
    while stack:
        u, done = stack.pop()
        if done:
            post.append(u)
            continue
        stack.append((u, True))
        for c in reversed(children[u]):
            stack.append((c, False))
    return RootedView(t, root, parent, children, tuple(post), depth)


# --------------------------------------------------------------------------
# Monotonicity


def _monotone_from(t: WeightedTree, r: int, direction: str) -> bool:
    rv = rooted(t, r)
    w = t.weight
    for v in rv.preorder:
        p = rv.parent[v]
        if p is None:
            continue
        if direction == "up" and w[v] > w[p]:
            return False
        if direction == "down" and w[v] < w[p]:
            return False
    return True


@dataclass(frozen=True)
class Classification:
    up_roots: tuple
    down_roots: tuple
    uniform: bool

    @property
    def is_up(self) -> bool:
        return bool(self.up_roots)

    @property
    def is_down(self) -> bool:
        return bool(self.down_roots)

    @property
    def kind(self) -> str:
        if self.uniform:
            return "uniform"
        if self.is_up and self.is_down:
            return "up+down"
        if self.is_up:
            return "up"
        if self.is_down:
            return "down"
        return "neither"


def classify_monotonic(t: WeightedTree) -> Classification:
    """Every root witnessing up-monotonicity (weights non-increasing away from
    the root) and down-monotonicity (non-decreasing away from it)."""
    ups = tuple(r for r in t.vertices if _monotone_from(t, r, "up"))
    downs = tuple(r for r in t.vertices if _monotone_from(t, r, "down"))
    uniform = len(set(t.weight.values())) == 1
    return Classification(ups, downs, uniform)


# --------------------------------------------------------------------------
# Layers


@dataclass(frozen=True)
class LayerComponent:
    id: int
    vertices: frozenset
    root: int
    weight: int
    lower_border: frozenset


@dataclass(frozen=True)
class LayerDecomposition:
    rooted: RootedView
    layers: tuple                # distinct weights, increasing
    components: tuple            # LayerComponent, top component first
    comp_of: dict                # vertex -> component id
    below: dict                  # component id -> ids of components directly below
    above: dict                  # component id -> id of component directly above (None for top)

    @property
    def top(self) -> LayerComponent:
        return self.components[0]

    @property
    def roots(self) -> frozenset:
        return frozenset(c.root for c in self.components)

    def bottom_up(self) -> list[LayerComponent]:
        """Components ordered so that every component follows all components below it."""
        return sorted(self.components, key=lambda c: -self.rooted.depth[c.root])


def decompose_layers(rv: RootedView) -> LayerDecomposition:
    t = rv.base
    if not is_rounded(t):
        raise InvalidTreeError("layer decomposition needs rounded weights")
    if not _monotone_from(t, rv.root, "up"):
        raise InvalidTreeError(f"vertex {rv.root} is not an up-monotonic root")
    w = t.weight
    comp_of: dict[int, int] = {}
    comps = []
    for v in rv.preorder:
        p = rv.parent[v]
        if p is not None and w[p] == w[v]:
            comp_of[v] = comp_of[p]
            comps[comp_of[v]][1].append(v)
        else:
            comp_of[v] = len(comps)
            comps.append((v, [v]))
    below = {i: [] for i in range(len(comps))}
    above = {}
    for i, (r, _) in enumerate(comps):
        p = rv.parent[r]
        above[i] = None if p is None else comp_of[p]
        if p is not None:
            below[comp_of[p]].append(i)
    out = []
    for i, (r, vs) in enumerate(comps):
        lower = frozenset(v for v in vs if any(comp_of[c] != i for c in rv.children[v]))
        out.append(LayerComponent(i, frozenset(vs), r, w[r], lower))
    return LayerDecomposition(
        rv, tuple(sorted(set(w.values()))), tuple(out), comp_of,
        {i: tuple(b) for i, b in below.items()}, above,
    )


# --------------------------------------------------------------------------
# k-monotonic partitions


@dataclass(frozen=True)
class KPartition:
    rooted: RootedView
    label: dict                  # vertex -> label
    direction: dict              # label -> "up" | "down" | "both"
    top: dict = field(default_factory=dict)   # label -> topmost vertex

    @property
    def k(self) -> int:
        rv = self.rooted
        count = {rv.root: 1}
        for v in rv.preorder:
            p = rv.parent[v]
            if p is not None:
                count[v] = count[p] + (self.label[v] != self.label[p])
        return max(count.values())

    def region(self, label) -> list[int]:
        return sorted(v for v, l in self.label.items() if l == label)


class PartitionError(ValueError):
    pass


def _class_direction(rv: RootedView, members: set, top: int) -> Optional[str]:
    w = rv.base.weight
    up_ok = down_ok = True
    for v in members:
        if v == top:
            continue
        p = rv.parent[v]
        if w[v] > w[p]:
            up_ok = False
        if w[v] < w[p]:
            down_ok = False
    if up_ok and down_ok:
        return "both"
    if up_ok:
        return "up"
    if down_ok:
        return "down"
    return None


def validate_partition(t: WeightedTree, root: int, label: Mapping[int, object]) -> KPartition:
    """Check an explicit labelling and derive each class's direction."""
    if set(label) != set(t.vertices):
        raise PartitionError("labelling must cover every vertex")
    rv = rooted(t, root)
    classes: dict = {}
    for v in t.vertices:
        classes.setdefault(label[v], set()).add(v)
    direction, top = {}, {}
    for lab, members in classes.items():
        if not is_connected(t, members):
            raise PartitionError(f"class {lab!r} is not connected")
        tops = [v for v in members if rv.parent[v] not in members]
        (h,) = tops
        d = _class_direction(rv, members, h)
        if d is None:
            raise PartitionError(f"class {lab!r} is not monotone from its top vertex {h}")
        direction[lab] = d
        top[lab] = h
    return KPartition(rv, dict(label), direction, top)


def _greedy_partition(t: WeightedTree, root: int) -> KPartition:
    rv = rooted(t, root)
    w = t.weight
    label = {root: 0}
    direction = {0: "both"}
    top = {0: root}
    queue = deque([root])
    while queue:
        p = queue.popleft()
        for c in rv.children[p]:
            lab = label[p]
            d = direction[lab]
            step = "down" if w[c] > w[p] else "up" if w[c] < w[p] else None
            if step is None or d in ("both", step):
                label[c] = lab
                if step is not None:
                    direction[lab] = step
            else:
                lab = len(direction)
                label[c] = lab
                direction[lab] = "both"
                top[lab] = c
            queue.append(c)
    return KPartition(rv, label, direction, top)


def partition_k_monotonic(t: WeightedTree, root: Optional[int] = None,
                          explicit: Optional[Mapping[int, object]] = None) -> KPartition:
    """Partition into monotone subtrees.

    Explicit labels are validated and returned.  Otherwise a top-down greedy
    segmentation is run from ``root`` (or from every vertex, keeping the
    smallest k, ties by least root id).
    """
    roots = [root] if root is not None else list(t.vertices)
    if explicit is not None:
        best, err = None, None
        for r in roots:
            try:
                kp = validate_partition(t, r, explicit)
            except PartitionError as exc:
                err = exc
                continue
            if best is None or kp.k < best.k:
                best = kp
        if best is None:
            raise err
        return best
    best = None
    for r in roots:
        kp = _greedy_partition(t, r)
        if best is None or kp.k < best.k:
            best = kp
    return best
