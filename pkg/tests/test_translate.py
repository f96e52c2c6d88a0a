import random

import pytest

from evidence_logic.checker import Evaluator, holds
from evidence_logic.corpus import gallery
from evidence_logic.errors import BoundError, ModelError
from evidence_logic.models import RelationalModel, check_e1, check_e2
from evidence_logic.sampling import OPERATORS_FOR, SizeProfile, random_formula, random_model
from evidence_logic.syntax import Entails, Knows, parse
from evidence_logic.translate import (doxastic_to_evidence, equivalence_trials,
                                      knowability_to_interaction, relational_holds,
                                      relational_to_evidence, subset_space_to_evidence, upsets,
                                      verify_equivalence)


def rel(worlds, kind, r_e, **kw):
    return RelationalModel(worlds, kind, r_e, kw.pop("valuation", {}), **kw)


def identity(worlds):
    return [(x, x) for x in worlds]


def test_identity_relation():
    m = relational_to_evidence(rel(["a", "b"], "evidence", identity("ab")))
    assert m.interp("e", "a") == {"a"}
    assert m.coherence_set("e") == {"a", "b"}


def test_chain_relation():
    r = rel(["a", "b", "c"], "evidence", identity("abc") + [("a", "b"), ("b", "c")])
    m = relational_to_evidence(r)
    assert (m.interp("e", "a"), m.interp("e", "b"), m.interp("e", "c")) == \
        ({"a", "b"}, {"b", "c"}, {"c"})
    assert check_e1(m).passed


def test_wrong_class_rejected():
    with pytest.raises(ModelError):
        relational_to_evidence(gallery("upset2"))


def test_subset_space():
    m = subset_space_to_evidence(["1", "2", "3"], [{"1", "2", "3"}], {})
    assert m.states == ("e0",) and m.interp("e0", "2") == {"1", "2", "3"}
    m = subset_space_to_evidence(["1", "2", "3"], [{"1", "2"}, {"3"}], {})
    assert len(m.states) == 2 and m.coherence_set("e0") == {"1", "2"}
    assert check_e1(m).passed


@pytest.mark.parametrize("seed", range(30))
def test_subset_space_collapse(seed):
    rng = random.Random(seed)
    worlds = ["1", "2", "3", "4"]
    family = [{x for x in worlds if rng.random() < 0.6} for _ in range(3)]
    m = subset_space_to_evidence(worlds, family, {"p": ["1", "3"], "q": ["2"]})
    phi = random_formula(rng, OPERATORS_FOR["EK"], ["p", "q"], 3)
    ev = Evaluator(m)
    for e in m.states:
        assert ev.truth_set(Knows(phi), e) == ev.truth_set(Entails(phi), e)


def test_doxastic():
    r = rel(["a", "b"], "doxastic", identity("ab"), r_b=[("a", "a"), ("b", "a")])
    m, v = doxastic_to_evidence(r)
    assert v == {"a"}
    assert m.beliefs["e"] == {"a"}


@pytest.mark.parametrize("seed", range(100))
def test_doxastic_e2_output_satisfies_e2(seed):
    r = random_model("relational-doxastic-e2", SizeProfile(max_worlds=5), seed)
    m, v = doxastic_to_evidence(r)
    assert check_e2(m, "e", v).passed


def test_upset_example():
    r = gallery("upset2")
    assert upsets(r) == [frozenset(), frozenset({"2"}), frozenset({"1", "2"})]
    m, top = knowability_to_interaction(r)
    assert m.interp("{2}", "1") == frozenset() and m.interp("{2}", "2") == {"2"}
    assert relational_holds(r, "2", parse("[]p"))
    assert holds(m, m.scenario("2", top), parse("[]p"))
    assert not relational_holds(r, "1", parse("[]p"))
    assert not holds(m, m.scenario("1", top), parse("[]p"))


def test_upset_counts():
    worlds = ["1", "2", "3"]
    flat = rel(worlds, "knowability", identity(worlds), r_box=identity(worlds))
    assert len(upsets(flat)) == 8
    chain = rel(worlds, "knowability", identity(worlds),
                r_box=identity(worlds) + [("1", "2"), ("2", "3"), ("1", "3")])
    assert len(upsets(chain)) == 4


def test_upset_cap():
    worlds = [str(i) for i in range(5)]
    r = rel(worlds, "knowability", identity(worlds), r_box=identity(worlds))
    with pytest.raises(BoundError):
        upsets(r, cap=4)


@pytest.mark.parametrize("seed", range(30))
def test_translated_knowability_structure(seed):
    r = random_model("relational-knowability", SizeProfile(max_worlds=5), seed)
    m, top = knowability_to_interaction(r)
    assert check_e1(m).passed
    family = upsets(r)
    assert len(m.states) == len(family)
    for u, s in zip(family, m.states):
        assert m.coherence_set(s) == u
        for u2, t in zip(family, m.states):
            assert m.coherence_set(m.meet(s, t)) == u & u2
    assert m.coherence_set(top) == set(r.worlds)


def test_atoms_agree():
    r = gallery("upset2")
    m, top = knowability_to_interaction(r)
    assert verify_equivalence(r, m, [parse("p")], top).agreed


@pytest.mark.parametrize("kind", ["relational", "relational-doxastic",
                                  "relational-doxastic-e2", "relational-knowability"])
def test_equivalence_trials(kind):
    rep = equivalence_trials(kind, 150, seed="unit")
    assert rep.checked > 0 and rep.agreed, rep.mismatches[:3]


def test_mismatch_is_reported():
    r = rel(["a", "b"], "evidence", identity("ab") + [("a", "b")], valuation={"p": ["a"]})
    wrong = relational_to_evidence(rel(["a", "b"], "evidence", identity("ab"),
                                       valuation={"p": ["a"]}))
    rep = verify_equivalence(r, wrong, [parse("E p")], "e")
    assert rep.mismatches == [{"formula": "E p", "world": "a", "relational": False,
                               "evidence": True}]
