import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import graphs, trees
from treehom.bounds import (
    ChainError,
    MarkovChain,
    chain_from_weights,
    degree_bound,
    degree_chain,
    entropies,
    log_degree_bound,
    markov_log_bound,
    markov_lower_bound,
    sidorenko_check,
    spectral_bound,
    spectral_chain,
    spectral_data,
    subdivide_chain,
    weights_weak_four_leaves,
    weights_y_ab1,
    weights_y_abc,
)
from treehom.enumpose import enumerate_trees
from treehom.graphcore import Graph, Tree, Y, complete, cycle, glue, path, spider, star
from treehom.homcount import hom_count

LN2 = math.log(2)


def _weak_four(k: int) -> Tree:
    """Two degree-3 vertices joined by a path with k inner vertices, each
    carrying two pendant paths of length 2."""
    core = path(k + 2)
    t = core
    for end in (0, k + 1):
        for _ in range(2):
            t = glue(t, end, path(3), 0)[0]
    return t


# --- chains -----------------------------------------------------------------------------


@given(trees(min_n=2, max_n=9), st.data())
def test_weight_chain_valid_or_rejected(t, data):
    w = [data.draw(st.integers(1, 9)) for _ in range(t.n)]
    try:
        c = chain_from_weights(t, w)
    except ChainError:
        # legitimate rejections: unbalanced classes or a non-positive edge flow
        return
    c.validate()
    a, b = t.bipartition
    assert sum(c.q[i] for i in a) == sum(c.q[i] for i in b)
    total = sum(w)
    assert c.q == tuple(Fraction(x, total) for x in w)


def test_weight_chain_rejects_imbalance():
    with pytest.raises(ChainError, match="unequal"):
        chain_from_weights(star(3), [5, 1, 1])
    with pytest.raises(ChainError):
        chain_from_weights(path(3), [1, 2])
    with pytest.raises(ChainError):
        chain_from_weights(path(3), [0, 1, 1])


def test_validate_catches_bad_kernels():
    g = path(2)
    with pytest.raises(ChainError):
        MarkovChain(g, {(0, 1): Fraction(1, 2), (1, 0): Fraction(1)}, (Fraction(1, 2), Fraction(1, 2))).validate()
    with pytest.raises(ChainError):
        MarkovChain(g, {(0, 1): Fraction(1), (1, 0): Fraction(1)}, (Fraction(1, 3), Fraction(1, 3))).validate()
    with pytest.raises(ChainError):
        MarkovChain(path(3), {(0, 2): Fraction(1)}, (Fraction(1, 3),) * 3).validate()


@given(graphs(min_n=2, max_n=7, connected=True))
def test_degree_chain_entropy_is_log_two_e(g):
    c = degree_chain(g)
    c.validate()
    ent = entropies(c)
    assert abs(ent.h_q + ent.h_p_given_q - math.log(2 * g.edge_count)) < 1e-12


def test_degree_chain_needs_edges():
    with pytest.raises(ChainError):
        degree_chain(Graph(2, []))


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_weak_four_leaves_template(k):
    t = _weak_four(k)
    c = chain_from_weights(t, weights_weak_four_leaves(t))
    c.validate()
    assert abs(entropies(c).h_p_given_q - LN2) < 1e-12


def test_weak_four_kernel_values():
    t = _weak_four(2)
    c = chain_from_weights(t, weights_weak_four_leaves(t))
    x, y = [v for v in range(t.n) if t.degrees[v] == 3]
    spine = set(t.path_between(x, y))
    for a in (x, y):
        for b in t.adj[a]:
            assert c.p(a, b) == (Fraction(1, 2) if b in spine else Fraction(1, 4))


@pytest.mark.parametrize("arms", [(2, 2, 2), (2, 3, 4), (3, 3, 5)])
def test_y_abc_template(arms):
    t = Y(*arms)
    w = weights_y_abc(t)
    assert sum(w) == 6 * (t.n - 3)
    c = chain_from_weights(t, w)
    c.validate()
    assert abs(entropies(c).h_p_given_q - LN2) < 1e-12


@pytest.mark.parametrize("arms", [(1, 3, 3), (1, 3, 6), (1, 4, 5)])
def test_y_ab1_template(arms):
    t = Y(*arms)
    w = weights_y_ab1(t)
    assert sum(w) == 12 * (t.n - 4)
    c = chain_from_weights(t, w)
    c.validate()
    assert abs(entropies(c).h_p_given_q - LN2) < 1e-12


def test_templates_reject_wrong_shapes():
    with pytest.raises(ValueError):
        weights_y_abc(Y(1, 2, 2))
    with pytest.raises(ValueError):
        weights_y_ab1(Y(1, 2, 3))
    with pytest.raises(ValueError):
        weights_weak_four_leaves(star(5))
    with pytest.raises(ValueError):
        weights_y_abc(path(5))


@pytest.mark.parametrize("template, tree", [
    (weights_weak_four_leaves, _weak_four(2)),
    (weights_y_abc, Y(2, 3, 3)),
    (weights_y_ab1, Y(1, 3, 4)),
])
def test_markov_bound_below_exact(template, tree):
    c = chain_from_weights(tree, template(tree))
    for m in range(3, 9):
        for tm in enumerate_trees(m):
            assert markov_log_bound(tm, c) <= math.log(hom_count(tm, tree)) + 1e-9


def test_markov_bound_preconditions():
    c = degree_chain(path(4))
    with pytest.raises(ValueError):
        markov_log_bound(path(2), c)
    with pytest.raises(ChainError):
        markov_lower_bound(path(4), path(5), c)


def test_subdivision_of_single_edge():
    c = degree_chain(path(2))
    s = subdivide_chain(c, (0, 1))
    assert s.q == (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))
    s.validate()
    assert s.graph.n == 3
    with pytest.raises(ChainError):
        subdivide_chain(degree_chain(path(3)), (0, 2))


@given(trees(min_n=2, max_n=7), st.data())
def test_subdivision_keeps_chain_valid(t, data):
    c = degree_chain(t)
    i, j = data.draw(st.sampled_from(t.edges))
    subdivide_chain(c, (i, j)).validate()


# --- spectral and degree bounds ----------------------------------------------------------------


def test_spectral_path_three():
    d = spectral_data(path(3))
    assert abs(d.eigenvalue - math.sqrt(2)) < 1e-9
    b = spectral_bound(path(3), path(3), d)
    assert b.lower <= 6


def test_spectral_chain_is_valid():
    spectral_chain(cycle(5)).validate()
    spectral_chain(path(6)).validate()


def test_spectral_data_rejects_disconnected():
    with pytest.raises(ValueError):
        spectral_data(Graph(3, [(0, 1)]))


@given(trees(min_n=3, max_n=7), graphs(min_n=2, max_n=7, connected=True))
def test_bounds_never_exceed_exact(t, g):
    exact = math.log(hom_count(t, g))
    assert spectral_bound(t, g).log_lower <= exact + 1e-9
    assert log_degree_bound(t, g) <= exact + 1e-9
    assert markov_log_bound(t, degree_chain(g)) <= exact + 1e-9


@pytest.mark.parametrize("g", [cycle(5), cycle(6), complete(4), complete(5)])
def test_bounds_tight_on_regular_targets(g):
    for m in range(3, 8):
        for t in enumerate_trees(m):
            exact = hom_count(t, g)
            for log_b in (spectral_bound(t, g).log_lower, log_degree_bound(t, g), markov_log_bound(t, degree_chain(g))):
                assert abs(math.exp(log_b) / exact - 1) < 1e-9


def test_degree_bound_with_single_branch_vertex():
    # four leaves on a single degree-4 vertex: C = 2 so the bound is (n-1) 2^(m-1)
    target = spider(1, 2, 2, 3)
    n = target.n
    for m in range(2, 8):
        assert abs(degree_bound(path(m), target) - (n - 1) * 2 ** (m - 1)) < 1e-6


def test_degree_bound_preconditions():
    with pytest.raises(ValueError):
        log_degree_bound(path(3), Graph(3, []))
    with pytest.raises(ValueError):
        log_degree_bound(path(1), path(3))


# --- Sidorenko ------------------------------------------------------------------------------------


@given(trees(max_n=7), graphs(min_n=1, max_n=6))
def test_sidorenko_holds_for_trees(t, g):
    r = sidorenko_check(t, g)
    assert r.holds
    assert isinstance(r.density, Fraction)


def test_sidorenko_example():
    r = sidorenko_check(path(4), star(5))
    assert r.hom == hom_count(path(4), star(5))
    assert r.density >= r.edge_density_power
