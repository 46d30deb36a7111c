"""Layer-by-layer ranking for up-monotonic costs (8-approximation).

The rounded tree is cut into layer components (maximal connected pieces of
equal weight).  Components are processed bottom-up: each one is ranked with
the vertex extension operator on slots of its own width, with the roots of
the components hanging below it entering as single-slot leaves.  A
non-top component root is then lifted above its whole subtree (structuring)
and re-aligned to the slot width of the component above (cost scaling).

The decision tree is the authoritative output.  The interval map ``f`` is
kept for the cost bound; cost scaling can pad a root's interval leftwards
over its descendants, so ``f`` is not checked as an extended strategy
function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .down_monotonic import NotMonotonicError
from .ranking import vertex_extension
from .strategy import DecisionTree, Interval, extract_decision_tree, restrict_decision_tree
from .tree_model import (
    InvalidTreeError,
    LayerComponent,
    LayerDecomposition,
    RootedView,
    WeightedTree,
    classify_monotonic,
    components,
    decompose_layers,
    is_power_of_two,
    is_rounded,
    rooted,
    round_weights,
)


def structuring_operator(rv: RootedView, f: Mapping[int, Interval], v: int) -> Interval:
    """Lowest interval of length ``w(v)`` lying above every interval in ``T_v``."""
    below = [f[u].b for u in rv.subtree(v) if u != v]
    start = max(below, default=0)
    if f[v].a >= start:
        return f[v]
    return Interval(start, start + rv.weight(v))


def cost_scaling_operator(iv: Interval, w_above: int, w_v: Optional[int] = None) -> Interval:
    """Widen ``iv`` to the ``w_above``-slot ending at the first multiple of
    ``w_above`` not below ``iv.b``."""
    if not is_power_of_two(w_above):
        raise ValueError(f"slot width {w_above} is not a power of two")
    if w_v is not None:
        if w_above < w_v or w_above % w_v:
            raise ValueError(f"slot width {w_above} is not a multiple of {w_v}")
        if iv.a % w_v or iv.b % w_v:
            raise ValueError(f"{iv} is not aligned to {w_v}")
    end = -(-iv.b // w_above) * w_above
    out = Interval(end - w_above, end)
    if w_v is not None and iv.length == w_v:
        assert out.b - iv.b <= w_above - w_v
    return out


@dataclass
class ComponentState:
    layers: LayerDecomposition
    f: dict = field(default_factory=dict)
    slot: dict = field(default_factory=dict)
    seq: dict = field(default_factory=dict)
    trees: dict = field(default_factory=dict)    # component root -> decision tree of T_root
    done: set = field(default_factory=set)


def process_component(comp: LayerComponent, state: ComponentState) -> ComponentState:
    layers = state.layers
    rv = layers.rooted
    width = comp.weight
    for b in layers.below[comp.id]:
        if b not in state.done:
            raise InvalidTreeError(f"component {b} below {comp.id} is not processed yet")
        r = layers.components[b].root
        iv = state.f[r]
        assert iv.length == width and iv.a % width == 0, "below-root not scaled to this layer"
        state.slot[r] = iv.a // width
    for u in rv.postorder:
        if u not in comp.vertices:
            continue
        kids = [state.seq[c] if c in comp.vertices else [state.slot[c]] for c in rv.children[u]]
        state.slot[u], state.seq[u] = vertex_extension(kids)
        state.f[u] = Interval(state.slot[u] * width, (state.slot[u] + 1) * width)
    r = comp.root
    if r != rv.root:
        state.f[r] = structuring_operator(rv, state.f, r)
        w_above = rv.weight(rv.parent[r])
        state.f[r] = cost_scaling_operator(state.f[r], w_above, width)
    f = state.f
    state.trees[r] = extract_decision_tree(rv.base, lambda v: f[v].b, rv.subtree(r))
    state.done.add(comp.id)
    return state


@dataclass(frozen=True)
class UpResult:
    decision_tree: DecisionTree
    bound: int
    f: dict
    rounded: WeightedTree
    root: int
    layers: LayerDecomposition


def solve_up_monotonic(t: WeightedTree) -> UpResult:
    cls = classify_monotonic(t)
    if not cls.is_up:
        raise NotMonotonicError("cost function is not up-monotonic")
    root = min(cls.up_roots)
    rt = round_weights(t)
    layers = decompose_layers(rooted(rt, root))
    state = ComponentState(layers)
    for comp in layers.bottom_up():
        process_component(comp, state)
    d = state.trees[root]
    bound = max(iv.b for iv in state.f.values())
    return UpResult(d, bound, dict(state.f), rt, root, layers)


# --------------------------------------------------------------------------
# Structured decision trees


def _layers_for(t: WeightedTree, root: Optional[int]) -> LayerDecomposition:
    if not is_rounded(t):
        raise InvalidTreeError("structuring needs rounded weights")
    if root is None:
        cls = classify_monotonic(t)
        if not cls.is_up:
            raise NotMonotonicError("cost function is not up-monotonic")
        root = min(cls.up_roots)
    return decompose_layers(rooted(t, root))


def is_structured(layers: LayerDecomposition, d: DecisionTree, include_top: bool = True) -> bool:
    """Every layer-component root is queried before the rest of its subtree."""
    rv = layers.rooted
    for comp in layers.components:
        if not include_top and comp.id == layers.top.id:
            continue
        below = set(d.preorder(comp.root))
        if not set(rv.subtree(comp.root)) <= below:
            return False
    return True


def structure_decision_tree(t: WeightedTree, d: DecisionTree,
                            root: Optional[int] = None) -> DecisionTree:
    """Rewrite ``d`` so that it is structured.

    Top-down over ``d``: whenever the planned query ``u`` lies inside the
    subtree of a layer-component root that is still a candidate, the topmost
    such root is queried instead and the old plan is restricted to each
    remaining component.
    """
    layers = _layers_for(t, root)
    rv = layers.rooted
    roots = layers.roots
    chain = {v: [a for a in reversed(rv.ancestors(v)) if a in roots] for v in t.vertices}
    children: dict[int, list[int]] = {}

    def place(plan: DecisionTree, cand: frozenset) -> int:
        u = plan.root
        pending = [a for a in chain[u] if a in cand]
        q = pending[0] if pending else u
        if q == u:
            subplans = [plan.subtree(c) for c in plan.children[u]]
        else:
            subplans = [restrict_decision_tree(t, plan, comp) for comp in components(t, cand - {q})]
        children[q] = [place(p, p.nodes) for p in subplans]
        return q

    top = place(d, d.nodes)
    return DecisionTree(top, children)
