import pydot
import pytest

from treehom.enumpose import (
    build_kc_poset,
    enumerate_trees,
    export_dot,
    maximal_chains,
    prufer_tree_count,
    rooted_level_sequences,
    tree_line,
)
from treehom.graphcore import canonical_code, is_isomorphic, path, star
from treehom.transforms import enumerate_kc_moves, kc_apply

KNOWN_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]


@pytest.mark.parametrize("n", range(1, 10))
def test_counts_match_pruefer_oracle(n):
    assert len(enumerate_trees(n)) == prufer_tree_count(n) == KNOWN_COUNTS[n - 1]


def test_counts_up_to_twelve():
    assert [len(enumerate_trees(n)) for n in range(1, 13)] == KNOWN_COUNTS


def test_rooted_level_sequence_counts():
    # rooted trees on n vertices: 1, 1, 2, 4, 9, 20, 48
    assert [sum(1 for _ in rooted_level_sequences(n)) for n in range(1, 8)] == [1, 1, 2, 4, 9, 20, 48]


@pytest.mark.parametrize("n", range(1, 10))
def test_enumeration_distinct_and_sorted(n):
    codes = [canonical_code(t) for t in enumerate_trees(n)]
    assert codes == sorted(codes)
    assert len(set(codes)) == len(codes)


@pytest.mark.parametrize("n", range(2, 10))
def test_kc_closure(n):
    known = {canonical_code(t) for t in enumerate_trees(n)}
    for t in enumerate_trees(n):
        for mv in enumerate_kc_moves(t):
            assert canonical_code(kc_apply(t, mv)) in known


def test_enumeration_bounds():
    with pytest.raises(ValueError):
        enumerate_trees(0)
    with pytest.raises(ValueError):
        enumerate_trees(17)
    with pytest.raises(ValueError):
        prufer_tree_count(0)


def test_poset_six():
    p = build_kc_poset(6)
    assert len(p.codes) == 6
    (lo,) = p.minimal()
    (hi,) = p.maximal()
    assert is_isomorphic(p.trees[lo], path(6))
    assert is_isomorphic(p.trees[hi], star(6))
    for a, b in p.hasse_edges:
        assert p.rank[b] == p.rank[a] + 1
    assert p.rank[lo] == 0 and p.rank[hi] == 3
    assert p.reachable_from(lo) == set(range(6))


def test_poset_two_is_a_single_node():
    p = build_kc_poset(2)
    assert len(p.codes) == 1 and p.hasse_edges == ()


@pytest.mark.parametrize("n", range(3, 10))
def test_poset_graded_with_unique_extremes(n):
    p = build_kc_poset(n)
    for chain in maximal_chains(p):
        assert [p.leaf_counts[i] for i in chain] == list(range(2, n))
    assert p.index_of(path(n)) == p.minimal()[0]
    assert p.index_of(star(n)) == p.maximal()[0]


def test_poset_bounds():
    with pytest.raises(ValueError):
        build_kc_poset(1)
    with pytest.raises(ValueError):
        build_kc_poset(13)


def test_dot_round_trip():
    p = build_kc_poset(6)
    text = export_dot(p)
    (graph,) = pydot.graph_from_dot_data(text)
    nodes = [n for n in graph.get_nodes() if n.get_name().startswith("t")]
    assert len(nodes) == 6
    edges = {(e.get_source(), e.get_destination()) for e in graph.get_edges()}
    assert edges == {(f"t{a}", f"t{b}") for a, b in p.hasse_edges}


def test_tree_line_format():
    assert tree_line(path(3)) == "3 0-1 1-2"
