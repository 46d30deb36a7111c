import pytest
from hypothesis import given, strategies as st

from brute import monotone_roots
from conftest import make_tree, path_tree, trees
from treesearch.tree_model import (
    InvalidTreeError,
    PartitionError,
    TreeFormatError,
    WeightedTree,
    classify_monotonic,
    decompose_layers,
    induced_subtree,
    is_rounded,
    next_power_of_two,
    parse_tree,
    partition_k_monotonic,
    rooted,
    round_weights,
    serialize_tree,
    tree_path,
    validate_partition,
)


def test_parse_single_vertex():
    p = parse_tree("tree 1\nvertex 1 5\n")
    assert p.tree.n == 1 and p.tree.weight == {1: 5} and p.root is None


def test_parse_path_421():
    p = parse_tree("tree 3\nvertex 1 4\nvertex 2 2\nvertex 3 1\nedge 1 2\nedge 2 3\n")
    assert p.tree.edges == ((1, 2), (2, 3))
    assert p.tree == path_tree(4, 2, 1)


def test_parse_root_and_part():
    p = parse_tree("# c\ntree 2\nvertex 1 1\nvertex 2 3\nedge 2 1\nroot 2\npart 1 a\npart 2 b\n")
    assert p.root == 2 and p.part == {1: "a", 2: "b"}


@pytest.mark.parametrize("text, line, needle", [
    ("tree 2\nvertex 1 1\nvertex 2 1\nedge 1 9\n", 4, "unknown vertex"),
    ("tree 2\nvertex 1 1\nvertex 1 1\n", 3, "duplicate vertex"),
    ("tree 2\nvertex 1 1\nvertex 2 0\n", 3, "non-positive"),
    ("tree 2\nvertex 1 1\nvertex 2 x\n", 3, "integer"),
    ("tree 3\nvertex 1 1\nvertex 2 1\nvertex 3 1\nedge 1 2\nedge 2 1\n", 6, "duplicate"),
    ("tree 2\nvertex 1 1\nvertex 2 1\nfoo 1\n", 4, "keyword"),
    ("vertex 1 1\n", 1, "header"),
])
def test_parse_errors_carry_line(text, line, needle):
    with pytest.raises(TreeFormatError) as ei:
        parse_tree(text)
    assert ei.value.lineno == line
    assert needle in str(ei.value)
    assert f"line {line}" in str(ei.value)


def test_parse_rejects_disconnected():
    text = "tree 4\nvertex 1 1\nvertex 2 1\nvertex 3 1\nvertex 4 1\nedge 1 2\nedge 3 4\n"
    with pytest.raises(TreeFormatError):
        parse_tree(text)


def test_parse_rejects_cycle():
    text = ("tree 4\nvertex 1 1\nvertex 2 1\nvertex 3 1\nvertex 4 1\n"
            "edge 1 2\nedge 2 3\nedge 1 3\n")
    with pytest.raises(TreeFormatError):
        parse_tree(text)


def test_constructor_validation():
    with pytest.raises(InvalidTreeError):
        WeightedTree({1: 1, 2: 1}, [])
    with pytest.raises(InvalidTreeError):
        WeightedTree({1: 1, 3: 1}, [(1, 3)])
    with pytest.raises(InvalidTreeError):
        WeightedTree({1: 0}, [])
    with pytest.raises(InvalidTreeError):
        WeightedTree({1: 1 << 63}, [])


def test_serialize_single_vertex():
    assert serialize_tree(WeightedTree({1: 5}, [])) == "tree 1\nvertex 1 5\n"


@given(trees(max_n=10, max_w=100))
def test_serialize_round_trip(t):
    text = serialize_tree(t)
    assert parse_tree(text).tree == t
    assert serialize_tree(parse_tree(text).tree) == text


def test_serialize_keeps_root_and_part():
    t = path_tree(4, 2, 1)
    text = serialize_tree(t, root=1, part={1: "a", 2: "a", 3: "b"})
    p = parse_tree(text)
    assert p.root == 1 and p.part == {1: "a", 2: "a", 3: "b"}


@pytest.mark.parametrize("w, r", [(1, 1), (2, 2), (3, 4), (5, 8), (8, 8), (9, 16)])
def test_next_power_of_two(w, r):
    assert next_power_of_two(w) == r


def test_rounding_overflow():
    with pytest.raises(OverflowError):
        next_power_of_two((1 << 62) + 1)


def test_rounding_fixes_powers():
    t = path_tree(4, 2, 1)
    assert round_weights(t) == t


@given(trees(max_w=1000))
def test_rounding_properties(t):
    r = round_weights(t)
    assert round_weights(r) == r and is_rounded(r)
    for v in t.vertices:
        assert t.weight[v] <= r.weight[v] < 2 * t.weight[v] or r.weight[v] == t.weight[v] == 1


def test_classify_examples():
    c = classify_monotonic(path_tree(1, 1, 1, 1))
    assert c.kind == "uniform" and c.up_roots == c.down_roots == (1, 2, 3, 4)
    c = classify_monotonic(path_tree(4, 2, 1))
    assert c.up_roots == (1,) and c.down_roots == (3,)
    # the heavy middle vertex is an up-root
    c = classify_monotonic(path_tree(1, 3, 2))
    assert c.kind == "up" and c.up_roots == (2,)
    assert classify_monotonic(path_tree(2, 1, 2, 1)).kind == "neither"


@given(trees(max_n=9, max_w=4))
def test_classify_matches_brute(t):
    ups, downs = monotone_roots(t.n, t.weight, t.edges)
    c = classify_monotonic(t)
    assert list(c.up_roots) == ups and list(c.down_roots) == downs


def test_rooted_view():
    rv = rooted(make_tree([1, 1, 1, 1], [1, 1, 2]), 2)
    assert rv.parent[2] is None and rv.parent[1] == 2 and rv.parent[3] == 1
    assert rv.children[1] == (3,)
    assert rv.postorder[-1] == 2 and set(rv.subtree(1)) == {1, 3}
    assert rv.ancestors(3) == [3, 1, 2]


def test_tree_path_and_induced():
    t = path_tree(1, 2, 3, 4)
    assert tree_path(t, 4, 1) == [4, 3, 2, 1]
    sub, back = induced_subtree(t, {2, 3})
    assert sub.n == 2 and {back[v]: sub.weight[v] for v in sub.vertices} == {2: 2, 3: 3}


def test_layers_distinct_path():
    ld = decompose_layers(rooted(path_tree(4, 2, 1), 1))
    assert [sorted(c.vertices) for c in ld.components] == [[1], [2], [3]]
    assert ld.top.root == 1
    ids = {c.root: c.id for c in ld.components}
    assert list(ld.below[ids[1]]) == [ids[2]] and list(ld.below[ids[2]]) == [ids[3]]


def test_layers_uniform():
    ld = decompose_layers(rooted(path_tree(2, 2, 2), 1))
    assert len(ld.components) == 1 and ld.top.vertices == frozenset({1, 2, 3})


def test_layers_star():
    t = make_tree([4, 2, 2, 2], [1, 1, 1])
    ld = decompose_layers(rooted(t, 1))
    assert ld.top.vertices == frozenset({1})
    assert sorted(len(c.vertices) for c in ld.components) == [1, 1, 1, 1]
    assert len(ld.below[ld.top.id]) == 3


def test_layers_need_rounded_up_root():
    with pytest.raises(InvalidTreeError):
        decompose_layers(rooted(path_tree(3, 2, 1), 1))
    with pytest.raises(InvalidTreeError):
        decompose_layers(rooted(path_tree(4, 2, 1), 3))


@st.composite
def rounded_up_trees(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    parents = [draw(st.integers(1, i + 1)) for i in range(n - 1)]
    w = [1 << draw(st.integers(0, 4))]
    for p in parents:
        w.append(1 << draw(st.integers(0, w[p - 1].bit_length() - 1)))
    return make_tree(w, parents)


@given(rounded_up_trees())
def test_layer_decomposition_properties(t):
    ld = decompose_layers(rooted(t, 1))
    assert set().union(*(c.vertices for c in ld.components)) == set(t.vertices)
    assert sum(len(c.vertices) for c in ld.components) == t.n
    for u, v in t.edges:
        same = ld.comp_of[u] == ld.comp_of[v]
        assert same == (t.weight[u] == t.weight[v])


def test_partition_down_is_single():
    kp = partition_k_monotonic(path_tree(1, 2, 4), 1)
    assert kp.k == 1


def test_partition_path_132():
    kp = partition_k_monotonic(path_tree(1, 3, 2), 1)
    assert kp.k == 2
    assert kp.label[1] == kp.label[2] != kp.label[3]


def test_partition_path_1428():
    kp = partition_k_monotonic(path_tree(1, 4, 2, 8), 1)
    assert kp.k == 2
    assert kp.label[1] == kp.label[2] and kp.label[3] == kp.label[4] != kp.label[1]
    validate_partition(kp.rooted.base, 1, kp.label)


def test_partition_best_root():
    kp = partition_k_monotonic(path_tree(1, 3, 2))
    assert kp.k == 1 and kp.rooted.root == 2


def test_explicit_partition_validation():
    t = path_tree(1, 4, 2, 8)
    kp = validate_partition(t, 1, {1: "a", 2: "a", 3: "b", 4: "c"})
    assert kp.k == 3 and kp.direction["b"] == "both"
    with pytest.raises(PartitionError):
        validate_partition(t, 1, {1: "a", 2: "a", 3: "a", 4: "b"})
    with pytest.raises(PartitionError):
        validate_partition(t, 1, {1: "a", 2: "b", 3: "a", 4: "a"})


@given(trees(max_n=10, max_w=6), st.data())
def test_greedy_partition_always_valid(t, data):
    root = data.draw(st.integers(1, t.n))
    kp = partition_k_monotonic(t, root)
    again = validate_partition(t, root, kp.label)
    assert again.k == kp.k
