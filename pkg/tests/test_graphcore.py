import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import graphs, trees
from treehom.graphcore import (
    Graph,
    GraphParseError,
    Tree,
    Y,
    canonical_code,
    complete,
    cycle,
    diameter,
    doublestar,
    e7,
    format_graph,
    format_tree,
    glue,
    induced_subgraph,
    is_isomorphic,
    layered,
    make_family,
    parse_graph,
    path,
    rooted_code,
    spider,
    star,
    tree_metrics,
    wiener_index,
)


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


# --- parsing ---------------------------------------------------------------


def test_walkthrough_tree_parses_one_based(walkthrough_tree):
    t = walkthrough_tree
    assert isinstance(t, Tree) and t.n == 7
    # 1-based vertices 3 and 4 are the branch vertices
    assert t.degrees[2] == 3 and t.degrees[3] == 3


def test_comments_and_blank_lines_ignored():
    g = parse_graph("# a triangle\n3 3\n\n0 1  # first\n1 2\n0 2\n")
    assert not isinstance(g, Tree)
    assert g.edge_count == 3


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 0),
        ("x\n", 1),
        ("3\n0 1\n", 1),
        ("3\n0 1\n1 5\n", 3),
        ("3\n0 0\n1 2\n", 2),
        ("3 2\n0 1\n1 0\n", 3),
        ("3 1\n0 1 2\n", 2),
        ("3 1\n0 a\n", 2),
        ("1 2 3\n", 1),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(GraphParseError) as exc:
        parse_graph(text)
    assert exc.value.line == line


def test_tree_header_rejects_disconnected_input():
    # n-1 edges but a cycle plus an isolated vertex
    with pytest.raises(GraphParseError):
        parse_graph("4\n0 1\n1 2\n0 2\n")


@given(trees())
def test_tree_format_round_trip(t):
    back = parse_graph(format_tree(t))
    assert isinstance(back, Tree) and back == t


@given(graphs())
def test_graph_format_round_trip(g):
    assert parse_graph(format_graph(g)) == g


def test_tree_constructor_validation():
    with pytest.raises(ValueError):
        Tree(3, [(0, 1)])
    with pytest.raises(ValueError):
        Tree(0, [])
    with pytest.raises(ValueError):
        Tree(2, [(0, 1)], root=5)


# --- families ----------------------------------------------------------------


def test_family_shapes():
    assert path(5).degrees == (1, 2, 2, 2, 1)
    assert star(5).degrees[0] == 4
    assert cycle(5).degrees == (2,) * 5
    assert complete(4).edge_count == 6
    assert Y(1, 2, 3).n == 7 and len(Y(1, 2, 3).leaves) == 3
    ds = doublestar(5)
    assert ds.n == 10 and ds.degrees[0] == ds.degrees[1] == 5
    assert sorted(e7().degrees) == [1, 1, 1, 2, 2, 2, 3]
    lt = layered(2, 3, 4)
    assert lt.n == 1 + 2 + 6 + 24
    assert make_family("Y", 1, 1, 3) == Y(1, 1, 3)
    assert is_isomorphic(spider(2, 2), path(5))


def test_family_validation():
    with pytest.raises(ValueError):
        Y(0, 1, 1)
    with pytest.raises(ValueError):
        doublestar(1)
    with pytest.raises(ValueError):
        make_family("nope", 3)
    with pytest.raises(ValueError):
        make_family("path")


# --- metrics against networkx -----------------------------------------------------


@given(trees(min_n=1, max_n=12))
def test_metrics_match_networkx(t):
    h = _nx(t)
    assert diameter(t) == (nx.diameter(h) if t.n > 1 else 0)
    # networkx sums unordered pairs
    expected = 2 * round(nx.wiener_index(h)) if t.n > 1 else 0
    assert wiener_index(t) == expected
    m = tree_metrics(t)
    assert m.leaves == sum(1 for d in t.degrees if d == 1)
    assert sum(m.bipartition_sizes) == t.n


def test_wiener_ordered_pairs_convention():
    assert wiener_index(path(3)) == 8
    with pytest.raises(ValueError):
        wiener_index(Graph(3, [(0, 1)]))


@given(trees(min_n=2))
def test_bipartition_is_proper(t):
    c = t.colors
    assert all(c[u] != c[v] for u, v in t.edges)
    a, b = t.bipartition
    assert len(a) + len(b) == t.n


# --- canonical codes ------------------------------------------------------------


@given(trees(), st.data())
def test_canonical_code_relabel_invariant(t, data):
    perm = data.draw(st.permutations(range(t.n)))
    assert canonical_code(t.relabel(perm)) == canonical_code(t)


@given(trees(max_n=9), trees(max_n=9))
def test_isomorphism_matches_networkx(t1, t2):
    assert is_isomorphic(t1, t2) == (t1.n == t2.n and nx.is_isomorphic(_nx(t1), _nx(t2)))


@given(trees(min_n=2), st.data())
def test_marked_code_tracks_marks(t, data):
    perm = data.draw(st.permutations(range(t.n)))
    u = data.draw(st.integers(0, t.n - 1))
    v = data.draw(st.integers(0, t.n - 1))
    assert canonical_code(t.relabel(perm), (perm[u], perm[v])) == canonical_code(t, (u, v))


def test_marked_code_distinguishes_positions():
    p = path(4)
    assert canonical_code(p, (0,)) == canonical_code(p, (3,))
    assert canonical_code(p, (0,)) != canonical_code(p, (1,))
    # swapping the marks on an asymmetric pair changes the code
    assert canonical_code(p, (0, 1)) != canonical_code(p, (1, 0))
    assert canonical_code(p, (0, 3)) == canonical_code(p, (3, 0))


def test_rooted_code_and_code_format():
    assert rooted_code(star(3), 0) == "(()())"
    assert canonical_code(path(1)) == b"()"
    with pytest.raises(ValueError):
        canonical_code(path(3), (0, 1, 2))


# --- helpers --------------------------------------------------------------------


def test_glue_identifies_roots():
    t, mapping = glue(path(3), 2, star(4), 0)
    assert t.n == 6 and mapping[0] == 2
    assert t.degrees[2] == 4


def test_induced_subgraph():
    g = induced_subgraph(cycle(5), [0, 1, 2])
    assert g.n == 3 and g.edge_count == 2


def test_graph_equality_and_hash():
    assert Graph(3, [(0, 1), (1, 2)]) == Graph(3, [(2, 1), (1, 0)])
    assert hash(Graph(3, [(0, 1), (1, 2)])) == hash(Graph(3, [(2, 1), (1, 0)]))
