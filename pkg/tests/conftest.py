import itertools

import pytest
from hypothesis import settings, strategies as st

from treehom.graphcore import Graph, Tree

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def trees(draw, min_n=1, max_n=9):
    """Random labelled tree: random recursive attachment, then a random relabelling."""
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    perm = draw(st.permutations(range(n)))
    return Tree(n, [(perm[p], perm[i]) for i, p in enumerate(parents, start=1)])


@st.composite
def rooted_trees(draw, min_n=1, max_n=9):
    t = draw(trees(min_n, max_n))
    return t.with_root(draw(st.integers(0, t.n - 1)))


@st.composite
def graphs(draw, min_n=1, max_n=6, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    if connected:
        # a random spanning tree plus arbitrary extra edges
        base = {(draw(st.integers(0, i - 1)), i) for i in range(1, n)}
        extra = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
        return Graph(n, sorted(base | extra))
    edges = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return Graph(n, sorted(edges))


@pytest.fixture
def walkthrough_tree():
    from treehom.graphcore import parse_graph

    return parse_graph("7\n1 3\n2 3\n3 4\n4 5\n5 6\n4 7\n", one_based=True)
