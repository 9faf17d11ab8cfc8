import json

import pytest

from lfsat import families, verifier
from lfsat.containment import LinearForestSpec
from lfsat.families import make_fan
from lfsat.graph import Graph, complete_graph, cycle_graph, disjoint_union, empty_graph, star_graph
from lfsat.graph6 import graph6_decode, graph6_encode
from lfsat.saturation import check_saturated
from lfsat.verifier import (
    LemmaReport,
    SaturatedInstance,
    lemma2_holds,
    lemma4_violation,
    observation_violation,
    saturated_universe,
    small_component_violation,
    verify_lemma2,
    verify_lemma4,
    verify_lemma5,
    verify_lemma8,
    verify_lemma10,
    verify_lemma15,
    verify_observation,
    verify_theorem_constructions,
)


@pytest.fixture(scope="module")
def universe():
    return saturated_universe(7, 5, 2)


def test_lemma5_at_seven_vertices():
    rep = verify_lemma5(7)
    assert rep.ok and not rep.vacuous
    assert rep.instances_checked == 11
    assert rep.notes[0] == "classes: BookStructural=10, Fan=1"


def test_lemma5_universe_contents():
    # F_3 is in the universe; C_7 is excluded because it is a P_7
    assert verifier.p7_free(make_fan(3))
    assert families.recognize(make_fan(3)) == families.Fan(3)
    assert not verifier.p7_free(cycle_graph(7))


def test_lemma5_bounds():
    with pytest.raises(ValueError):
        verify_lemma5(11)
    with pytest.raises(ValueError):
        verify_lemma5(9, min_n=6)


def test_lemma2_examples():
    assert lemma2_holds(complete_graph(3) + empty_graph(1))
    assert lemma2_holds(star_graph(3))  # no vertex of degree 2
    assert not lemma2_holds(Graph.from_edges(3, [(0, 1), (1, 2)]))


def test_lemma2_sweep(universe):
    rep = verify_lemma2(universe)
    assert rep.ok and rep.instances_checked > 0


def test_lemma4_finds_the_matching_counterexample(universe):
    # 3P_2 + K_1 is P_3 + P_2 saturated, yet it has isolated and degree-1 vertices
    g = disjoint_union(complete_graph(2), complete_graph(2), complete_graph(2), empty_graph(1))
    spec = LinearForestSpec(3, 1)
    assert check_saturated(g, spec).saturated
    assert lemma4_violation(g, spec, all_copies=True) == "V0 and V1 both non-empty"
    rep = verify_lemma4(universe)
    assert rep.counterexamples == [graph6_encode(g).decode()]
    assert rep.mode == "all-copies"


def test_lemma4_copy_condition_holds_on_padded_clique():
    g = complete_graph(6) + empty_graph(2)
    spec = LinearForestSpec(5, 1)
    assert check_saturated(g, spec).saturated
    assert lemma4_violation(g, spec, all_copies=True) is None
    assert lemma4_violation(g, spec, all_copies=False) is None


def test_lem15_sweep_for_p4_p2():
    inst = [SaturatedInstance(g, LinearForestSpec(4, 1)) for g in verifier.saturated_graphs(7, LinearForestSpec(4, 1))]
    rep = verify_lemma15(inst)
    assert rep.ok and rep.instances_checked > 0


def test_small_component_rule():
    spec = LinearForestSpec(5, 1)
    assert small_component_violation(complete_graph(3) + empty_graph(2), spec) is None
    assert "even order" in small_component_violation(complete_graph(2) + empty_graph(2), spec)
    assert "not a clique" in small_component_violation(star_graph(2) + empty_graph(2), spec)
    # order k - 1 with k odd is allowed
    assert small_component_violation(complete_graph(4) + empty_graph(2), spec) is None


def test_observation_for_matchings():
    inst = []
    for n in range(2, 7):
        for t in (0, 1):
            spec = LinearForestSpec(2, t)
            if spec.order <= n:
                inst += [SaturatedInstance(g, spec) for g in verifier.saturated_graphs(n, spec)]
    rep = verify_observation(inst)
    assert rep.ok and rep.instances_checked > 0


def test_observation_detects_a_non_saturated_graph():
    # C_5 is not P_7-saturated; the chord 0-2 changes neither quantity
    assert observation_violation(cycle_graph(5), LinearForestSpec(7, 1)) is not None


@pytest.mark.slow
def test_lemma10_small_scale():
    rep = verify_lemma10(max_n=9)
    assert rep.ok
    # K_7 + K_1, K_7 + 2K_1 and K_8 + K_1 are instances
    assert rep.instances_checked == 3 and not rep.vacuous


def test_lemma10_needs_long_paths():
    with pytest.raises(ValueError):
        verify_lemma10(max_n=8, ks=(5,))


@pytest.mark.slow
def test_lemma8_is_vacuous_at_desk_scale():
    rep = verify_lemma8(max_n=9)
    assert rep.vacuous and rep.ok
    assert rep.status == "vacuous"


def test_theorem_constructions():
    rep = verify_theorem_constructions(t_values=(1, 2), forest_ns=(28,))
    assert rep.ok and rep.instances_checked == 2 + 3
    assert any("alpha_7(H + e) histogram" in note for note in rep.notes)


def test_report_serialisation():
    rep = LemmaReport("x", "nothing")
    assert rep.status == "vacuous"
    doc = json.loads(rep.dumps())
    assert doc["vacuous"] is True and doc["counterexamples"] == []
    rep.instances_checked = 1
    rep.add_counterexample(cycle_graph(4))
    rep.add_counterexample(cycle_graph(4))
    assert rep.counterexamples == ["Cl"] and rep.status == "FAILED"
    assert "counterexamples: Cl" in rep.summary()


def test_counterexamples_replay(universe):
    rep = verify_lemma4(universe)
    for s in rep.counterexamples:
        g = graph6_decode(s)
        assert any(lemma4_violation(g, i.spec, True) for i in universe if i.graph == g)


def test_mutated_fan_is_detected(monkeypatch):
    real = families.make_fan

    def broken(i):
        g = real(i)
        return g.remove_edge(1, 2)  # drop one rim edge

    monkeypatch.setattr(families, "make_fan", broken)
    rep = verify_lemma5(7)
    assert rep.counterexamples
    assert graph6_decode(rep.counterexamples[0]).num_edges() == 9


def test_reports_are_reproducible():
    a = [r.dumps() for r in verifier.run(("5", "theorem"), lemma5_max_n=7, t_values=(1,))]
    b = [r.dumps() for r in verifier.run(("5", "theorem"), lemma5_max_n=7, t_values=(1,), threads=2)]
    assert a == b


def test_unknown_lemma():
    with pytest.raises(ValueError):
        verifier.run(("99",))
