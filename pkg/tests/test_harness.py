import json

import pytest
from hypothesis import given, settings, strategies as st

from conftest import trees
from treehom import harness
from treehom.graphcore import Y, e7, glue, is_isomorphic, layered, parse_graph, path, star, wiener_index
from treehom.homcount import hom_count
from treehom.harness import (
    CHECKS,
    FIXTURES,
    REPRO,
    CheckReport,
    SweepSpec,
    layered_hom,
    load_fixture,
    reproduce_counterexample,
    run_check,
    small_graphs,
    special_double_starlike,
)

SMALL = SweepSpec(m_max=5, n_max=6, graph_max=4)


def test_registry_ids():
    expected = {
        "table1", "table2", "kc-even", "kc-odd-starlike", "kc-walks", "into-paths-i", "into-paths-ii",
        "star-max", "symmetrization", "inclusion-exclusion-fact", "geq4-lower", "minimality-exceptions",
        "end-extremal", "to-stars", "cycle-extremal", "cycle-vs-tree", "g-path", "s-hom", "01-path",
        "correlation", "log-concavity", "bi-unimodal", "averaging", "ls-switch", "conjecture-1-9",
        "entropy-bounds",
    }
    assert set(CHECKS) == expected
    assert set(REPRO) == {"doublestar", "counter2", "counter3", "e7", "s4"}
    assert CHECKS["conjecture-1-9"][1] is False
    assert all(gating for cid, (_, gating, _) in CHECKS.items() if cid != "conjecture-1-9")


@pytest.mark.parametrize("cid", sorted(CHECKS))
def test_checks_pass_on_small_sweep(cid):
    rep = run_check(cid, SMALL)
    assert rep.status == "pass", rep.to_json()
    assert rep.instances > 0


@pytest.mark.parametrize("cid", ["kc-even", "table2", "minimality-exceptions", "averaging"])
def test_reports_are_deterministic(cid):
    a = run_check(cid, SMALL).to_json(include_timing=False)
    b = run_check(cid, SMALL).to_json(include_timing=False)
    assert a == b
    assert "seconds" not in json.loads(a)
    assert "seconds" in json.loads(run_check(cid, SMALL).to_json())


def test_unknown_ids_rejected():
    with pytest.raises(KeyError):
        run_check("no-such-check")
    with pytest.raises(KeyError):
        reproduce_counterexample("no-such-witness")


def test_sweep_validation():
    with pytest.raises(ValueError):
        SweepSpec(m_max=0)
    with pytest.raises(ValueError):
        SweepSpec(graph_max=8)


def test_failing_check_reports_minimal_witness(monkeypatch):
    def bogus(sweep, rep):
        for m in range(1, 40):
            rep.instances += 1
            rep.violation(path(2), path(2), m=m)

    monkeypatch.setitem(CHECKS, "bogus", (bogus, True, "always fails"))
    rep = run_check("bogus", SMALL)
    assert rep.status == "fail"
    assert rep.violation_count == 39
    assert len(rep.violations) == harness.MAX_STORED_VIOLATIONS
    assert rep.witnesses == [rep.violations[0]]
    data = json.loads(rep.to_json())
    assert data["violations"][0]["values"] == {"m": "1"}


def test_exact_values_serialise_as_strings():
    rep = CheckReport("x")
    rep.notes["big"] = 2**80
    assert json.loads(rep.to_json())["notes"]["big"] == str(2**80)


# --- individual check behaviour -------------------------------------------------------------------


def test_end_extremal_to_nine():
    rep = run_check("end-extremal", SweepSpec(m_max=3, n_max=9))
    assert rep.passed
    ends = rep.to_dict()["notes"]["end_path_star"]
    assert ends["5"] == ["42", "260"]
    assert ends["9"][1] == str(8**8 + 8)


def test_minimality_exceptions_only_at_allowed_targets():
    rep = run_check("minimality-exceptions", SweepSpec())
    assert rep.passed
    for tree_text in rep.notes["exception_targets"]:
        t = parse_graph(tree_text)
        assert t.n % 2 == 0 and is_isomorphic(t, Y(1, 1, t.n - 3))


def test_allowed_exception_predicate():
    assert harness._allowed_exception(star(4))
    assert harness._allowed_exception(Y(1, 1, 3))
    assert not harness._allowed_exception(Y(1, 1, 2))
    assert not harness._allowed_exception(path(6))


def test_averaging_records_negative_control():
    rep = run_check("averaging", SMALL)
    assert rep.notes["negative_control"] is not None


def test_into_paths_records_drop_outside_hypothesis():
    rep = run_check("into-paths-i", SweepSpec(m_max=6, n_max=3))
    assert rep.passed
    example = rep.notes["drop_example"]
    assert example is not None and example["n"] == 3


def test_table_cells_witnessed_both_ways():
    rep = run_check("table1", SweepSpec(m_max=3, n_max=8))
    cell = rep.notes["X: hom(T,T) vs hom(T,S)"]
    assert cell["left_smaller"] and cell["left_larger"]
    rep = run_check("table2", SMALL)
    for key in ("X: hom(P_m,T_n) vs hom(T_m,T_n)", "X: hom(T_m,T_n) vs hom(T_m,S_n)"):
        assert rep.notes[key]["left_smaller"] and rep.notes[key]["left_larger"]


def test_conjecture_check_is_non_gating():
    rep = run_check("conjecture-1-9", SMALL)
    assert rep.gating is False


# --- supporting constructions ------------------------------------------------------------------------


def test_small_graph_atlas_counts():
    # graphs on n vertices up to isomorphism: 1, 2, 4, 11, 34; connected: 1, 1, 2, 6, 21
    assert [len(small_graphs(n)) for n in range(1, 6)] == [1, 2, 4, 11, 34]
    assert [len(small_graphs(n, True)) for n in range(1, 6)] == [1, 1, 2, 6, 21]


@given(trees(max_n=7), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=40)
def test_layered_quotient_matches_engine(h, k1, k2, k3):
    assert layered_hom(h, k1, k2, k3) == hom_count(h, layered(k1, k2, k3))


@pytest.mark.parametrize("n", [10, 12, 14])
def test_special_double_starlike_shape(n):
    t = special_double_starlike(n)
    assert t.n == n and len(t.leaves) == 4
    assert sorted(d for d in t.degrees if d > 2) == [3, 3]
    with pytest.raises(ValueError):
        special_double_starlike(9)


def test_wiener_lemma_example():
    # two pendant edges at distinct vertices vs both at one of them
    r = path(4)
    k2 = path(2).with_root(0)
    a = glue(glue(r, 0, k2, 0)[0], 3, k2, 0)[0]
    b = glue(glue(r, 0, k2, 0)[0], 0, k2, 0)[0]
    c = glue(glue(r, 3, k2, 0)[0], 3, k2, 0)[0]
    assert 2 * wiener_index(a) > wiener_index(b) + wiener_index(c)


# --- fixtures and counterexamples -----------------------------------------------------------------------


def test_fixtures_load():
    for name in FIXTURES:
        assert load_fixture(name).n > 0
    with pytest.raises(KeyError):
        load_fixture("missing")


def test_fixtures_match_reproduced_witnesses():
    for cid, names in (("counter2", ("counter2_before", "counter2_after")), ("counter3", ("counter3_before", "counter3_after"))):
        rep = reproduce_counterexample(cid)
        for text, name in zip(rep.witnesses, names):
            assert is_isomorphic(parse_graph(text), load_fixture(name))
    assert hom_count(load_fixture("counter2_before"), path(3)) == 20
    assert hom_count(load_fixture("counter2_after"), path(3)) == 16
    t = load_fixture("counter3_before")
    assert hom_count(t, t) == 17190
    t = load_fixture("counter3_after")
    assert hom_count(t, t) == 10430


def test_e7_fixture_witness():
    t = load_fixture("e7_layered_16_1_19")
    assert is_isomorphic(t, layered(16, 1, 19))
    assert hom_count(path(7), t) > hom_count(e7(), t)


def test_doublestar_report():
    rep = reproduce_counterexample("doublestar")
    assert rep.passed
    assert rep.notes["hom(S*10,S10)"] == 118098
    assert rep.notes["hom(S*10,S*10)"] > 118098
    assert rep.notes["kc_move_to_star"] is not None


def test_s4_report():
    rep = reproduce_counterexample("s4")
    assert rep.passed and rep.notes["smallest_k"] == 7
