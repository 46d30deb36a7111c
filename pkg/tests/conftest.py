import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from treesearch import WeightedTree  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def make_tree(weights, parents):
    """Vertex i+2 hangs under parents[i] (1-based, < i+2)."""
    w = {i + 1: x for i, x in enumerate(weights)}
    return WeightedTree(w, [(p, i + 2) for i, p in enumerate(parents)])


def path_tree(*weights):
    return make_tree(weights, list(range(1, len(weights))))


@st.composite
def trees(draw, min_n=1, max_n=8, max_w=9):
    n = draw(st.integers(min_n, max_n))
    weights = draw(st.lists(st.integers(1, max_w), min_size=n, max_size=n))
    parents = [draw(st.integers(1, i + 1)) for i in range(n - 1)]
    perm = draw(st.permutations(range(1, n + 1)))
    w = {perm[i]: weights[i] for i in range(n)}
    return WeightedTree(w, [(perm[p - 1], perm[i + 1]) for i, p in enumerate(parents)])


@pytest.fixture
def p421():
    return path_tree(4, 2, 1)


@pytest.fixture
def p124():
    return path_tree(1, 2, 4)


@pytest.fixture
def p3():
    return path_tree(1, 1, 1)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
