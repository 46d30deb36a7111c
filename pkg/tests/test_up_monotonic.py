import random

import pytest
from hypothesis import given, strategies as st

from brute import vertex_opt
from conftest import make_tree, path_tree
from test_strategy import random_dtree
from treesearch.down_monotonic import NotMonotonicError
from treesearch.oracle import opt_cost
from treesearch.strategy import DecisionTree, Interval as I, decision_tree_cost
from treesearch.tree_model import InvalidTreeError, decompose_layers, rooted
from treesearch.up_monotonic import (
    cost_scaling_operator,
    is_structured,
    solve_up_monotonic,
    structure_decision_tree,
    structuring_operator,
)


def test_structuring_operator():
    t = make_tree([2, 1, 1], [1, 1])
    rv = rooted(t, 1)
    f = {1: I(0, 2), 2: I(2, 4), 3: I(0, 1)}
    assert structuring_operator(rv, f, 1) == I(4, 6)
    assert structuring_operator(rv, f, 3) == I(0, 1)
    f[1] = I(6, 8)
    assert structuring_operator(rv, f, 1) == I(6, 8)


@pytest.mark.parametrize("iv, above, wv, out", [
    (I(0, 1), 2, 1, I(0, 2)),
    (I(2, 4), 4, 2, I(0, 4)),
    (I(4, 6), 2, 2, I(4, 6)),
    (I(6, 8), 8, 2, I(0, 8)),
    (I(8, 10), 8, 2, I(8, 16)),
])
def test_cost_scaling_operator(iv, above, wv, out):
    assert cost_scaling_operator(iv, above, wv) == out


def test_cost_scaling_rejects_bad_widths():
    with pytest.raises(ValueError):
        cost_scaling_operator(I(0, 1), 3)
    with pytest.raises(ValueError):
        cost_scaling_operator(I(1, 3), 4, 2)


def test_path_421_trace(p421):
    r = solve_up_monotonic(p421)
    assert r.f[3] == I(0, 2) and r.f[2] == I(0, 4) and r.f[1] == I(4, 8)
    assert r.decision_tree == DecisionTree(1, {1: [2], 2: [3]})
    assert decision_tree_cost(r.decision_tree, p421.weight) == 7
    assert opt_cost(p421)[0] == 6


def test_single_vertex():
    r = solve_up_monotonic(path_tree(3))
    assert decision_tree_cost(r.decision_tree, {1: 3}) == 3 and r.bound == 4


def test_uniform_matches_ranking():
    t = make_tree([1] * 7, [1, 1, 2, 2, 3, 3])
    r = solve_up_monotonic(t)
    assert decision_tree_cost(r.decision_tree, t.weight) == vertex_opt(7, t.weight, t.edges) == 3


def test_rejects_down_only():
    with pytest.raises(NotMonotonicError):
        solve_up_monotonic(path_tree(1, 2, 1, 2))


@st.composite
def up_trees(draw, max_n=9, rounded=False):
    n = draw(st.integers(1, max_n))
    parents = [draw(st.integers(1, i + 1)) for i in range(n - 1)]
    if rounded:
        w = [1 << draw(st.integers(0, 5))]
        for p in parents:
            w.append(1 << draw(st.integers(0, w[p - 1].bit_length() - 1)))
    else:
        w = [draw(st.integers(1, 40))]
        for p in parents:
            w.append(draw(st.integers(1, w[p - 1])))
    return make_tree(w, parents)


@given(up_trees(rounded=True))
def test_rounded_ratio_and_bound(t):
    r = solve_up_monotonic(t)
    d = r.decision_tree
    assert d.is_valid(t)
    cost = decision_tree_cost(d, t.weight)
    assert cost <= r.bound
    assert cost <= 4 * vertex_opt(t.n, t.weight, t.edges)
    assert is_structured(r.layers, d, include_top=False)


@given(up_trees())
def test_arbitrary_ratio(t):
    r = solve_up_monotonic(t)
    assert r.decision_tree.is_valid(t)
    cost = decision_tree_cost(r.decision_tree, t.weight)
    assert decision_tree_cost(r.decision_tree, r.rounded.weight) <= r.bound
    assert cost <= 8 * vertex_opt(t.n, t.weight, t.edges)


def test_structuring_fixes_chain_counterexample():
    # path v(2)-y(2)-x(1): querying x first breaks structure
    t = path_tree(2, 2, 1)
    d = DecisionTree(3, {3: [2], 2: [1]})
    layers = decompose_layers(rooted(t, 1))
    assert not is_structured(layers, d)
    s = structure_decision_tree(t, d)
    assert s.is_valid(t) and is_structured(layers, s)
    assert decision_tree_cost(s, t.weight) <= 2 * decision_tree_cost(d, t.weight)


def test_structuring_uniform_reroots():
    t = path_tree(1, 1, 1)
    s = structure_decision_tree(t, DecisionTree(2, {2: [1, 3]}))
    assert s.root == 1


def test_structuring_needs_rounded():
    with pytest.raises(InvalidTreeError):
        structure_decision_tree(path_tree(3, 1), DecisionTree(1, {1: [2]}))


@given(up_trees(rounded=True), st.integers(0, 10**6))
def test_structuring_keeps_cost_within_twice(t, seed):
    layers = decompose_layers(rooted(t, 1))
    for d in (opt_cost(t)[1], random_dtree(t, random.Random(seed))):
        s = structure_decision_tree(t, d, root=1)
        assert s.is_valid(t) and is_structured(layers, s)
        if is_structured(layers, d):
            assert s == d
    opt = opt_cost(t)[0]
    s = structure_decision_tree(t, opt_cost(t)[1], root=1)
    assert decision_tree_cost(s, t.weight) <= 2 * opt
