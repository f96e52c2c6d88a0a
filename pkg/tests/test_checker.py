import random

import pytest

from evidence_logic.checker import Evaluator, explain, holds, is_valid_in, truth_set
from evidence_logic.errors import LanguageError, ModelError
from evidence_logic.models import EvidenceModel, check_e1
from evidence_logic.sampling import OPERATORS_FOR, SizeProfile, random_formula, random_model
from evidence_logic.syntax import Entails, Knows, Not, parse


def f(text):
    return parse(text)


def test_clock_entailment(clock1):
    s = clock1.scenario("15", "e")
    assert "15" in truth_set(clock1, "e", f("E ~pos_6")).members
    assert "15" not in truth_set(clock1, "e", f("E E ~pos_6")).members
    assert holds(clock1, s, f("E ~pos_6"))
    assert not holds(clock1, s, f("E E ~pos_6"))


def test_clock_knowledge(clock1):
    for c in clock1.coherence_set("e"):
        s = clock1.scenario(c, "e")
        assert holds(clock1, s, f("K ~pos_45"))
        assert holds(clock1, s, f("K ~E ~pos_15"))


def test_top_is_coherence_set(clock1):
    assert truth_set(clock1, "e", f("true")).members == clock1.coherence_set("e")


def test_two_world_truth_sets(two_world):
    assert truth_set(two_world, "e", f("E~p")).members == {"b"}
    assert truth_set(two_world, "e", f("E E~p")).members == {"b"}


def test_trace_witness_chain(clock1):
    trace = explain(clock1, clock1.scenario("15", "e"), f("E E ~pos_6"))
    assert trace.value is False and trace.witness == "8"
    inner = trace.children[0]
    assert (inner.world, inner.value, inner.witness) == ("8", False, "6")
    assert "I_e(8)" in inner.sets


def test_trace_top_and_k(two_world):
    t = explain(two_world, two_world.scenario("a", "e"), f("true"))
    assert t.clause == "top" and not t.children and t.value
    k = explain(two_world, two_world.scenario("a", "e"), f("K p"))
    assert k.value is False and k.witness == "b"
    assert k.to_dict()["children"][0]["world"] == "b"


def test_belief_requires_set(two_world):
    with pytest.raises(LanguageError):
        truth_set(two_world, "e", f("B p"))
    assert truth_set(two_world, "e", f("B p"), v={"a"}).members == {"a", "b"}
    assert truth_set(two_world, "e", f("B p"), v={"a", "b"}).members == frozenset()


def test_knowability_needs_interaction_model(two_world):
    with pytest.raises(LanguageError):
        truth_set(two_world, "e", f("[]p"))


def test_strict_mode_rejects_e1_failures():
    m = EvidenceModel(["a", "b"], ["e"], {"e": {"a": ["a", "b"]}}, {"p": ["a"]})
    assert truth_set(m, "e", f("K p")).members == frozenset()  # general clause
    with pytest.raises(ModelError, match="E1"):
        truth_set(m, "e", f("K p"), strict_e1=True)


def test_general_k_clause_differs_without_e1():
    m = EvidenceModel(["a", "b"], ["e"], {"e": {"a": ["a", "b"]}}, {"p": ["a"]})
    # U_e = {a}; the union of interpretations also contains b
    assert m.coherence_set("e") == {"a"}
    assert not holds(m, m.scenario("a", "e"), f("K p"))


def _scenario_sets(m, g, v=None):
    ev = Evaluator(m, v)
    return {e: ev.truth_set(g, e) for e in m.states}


@pytest.mark.parametrize("seed", range(60))
def test_semantic_laws_on_random_models(seed):
    rng = random.Random(seed)
    m = random_model("doxastic", SizeProfile(max_worlds=5, max_evidence=2), rng)
    assert check_e1(m).passed
    for _ in range(5):
        phi = random_formula(rng, OPERATORS_FOR["EKB"], ["p", "q"], 3)
        for e in m.states:
            v = m.beliefs.get(e)
            if v is None:
                continue
            ev = Evaluator(m, v)
            u = m.coherence_set(e)
            t = ev.truth_set(phi, e)
            ks = ev.truth_set(Knows(phi), e)
            es = ev.truth_set(Entails(phi), e)
            assert es <= t and ks <= t  # factivity
            assert ks <= es  # K implies E
            assert ks in (u, frozenset())
            union_clause = u if u <= t else frozenset()
            assert ks == union_clause
            dual = ev.truth_set(Not(Entails(Not(phi))), e)
            assert dual == u - ev.truth_set(Entails(Not(phi)), e)
            plain = Evaluator(m, v, memo=False)
            assert plain.truth_set(Knows(Entails(phi)), e) == ev.truth_set(Knows(Entails(phi)), e)


def test_is_valid_in(chain3):
    assert is_valid_in(chain3, f("K p -> E p"))
    assert not is_valid_in(chain3, f("E p -> E E p"))
