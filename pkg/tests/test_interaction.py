import random

import pytest

from evidence_logic.checker import Evaluator, holds
from evidence_logic.corpus import gallery
from evidence_logic.errors import ModelError
from evidence_logic.interaction import InteractionModel, box_holds, effort_holds, interp_at, meet
from evidence_logic.models import EvidenceModel, check_e1
from evidence_logic.sampling import SizeProfile, random_formula, random_model
from evidence_logic.syntax import Box, EffortBox, Knows, parse


@pytest.fixture
def gens():
    return gallery("constant-generators")


def S(*names):
    return frozenset(names)


def test_meet_examples():
    worlds = ["a"]
    base = EvidenceModel(worlds, ["g1", "g2", "g3"],
                         {g: {"a": ["a"]} for g in ("g1", "g2", "g3")}, {})
    m = InteractionModel(base)
    assert meet(m, S("g1"), S("g2")) == S("g1", "g2")
    assert meet(m, S("g1"), S("g1")) == S("g1")
    assert meet(m, S("g1", "g2"), S("g2", "g3")) == S("g1", "g2", "g3")
    with pytest.raises(ModelError):
        meet(m, S("g1"), S("g9"))
    assert len(m.states) == 7


def test_interp_at(gens, clock1):
    for x in "abc":
        assert interp_at(gens, S("g1", "g2"), x) == {"b"}
        assert interp_at(gens, S("g1"), x) == {"a", "b"}
    clock = InteractionModel(clock1)
    assert interp_at(clock, S("e"), "15") == {str(c) for c in range(8, 23)}


def test_box_examples(gens):
    s = gens.scenario("b", S("g1"))
    assert box_holds(gens, s, parse("p"))
    assert not holds(gens, s, parse("K p"))
    assert effort_holds(gens, s, parse("K p"))
    assert effort_holds(gens, s, parse("true"))


def test_base_must_satisfy_e1():
    base = EvidenceModel(["a", "b"], ["g"], {"g": {"a": ["a", "b"]}}, {})
    with pytest.raises(ModelError, match="E1"):
        InteractionModel(base)


def test_generator_cap():
    base = EvidenceModel(["a"], ["g%d" % i for i in range(4)], {}, {})
    with pytest.raises(ModelError, match="cap"):
        InteractionModel(base, max_generators=3)


def test_explicit_closure_requires_meets():
    worlds = ["a", "b", "c"]
    base = EvidenceModel(worlds, ["s", "t"],
                         {"s": {x: ["a", "b"] for x in worlds},
                          "t": {x: ["b", "c"] for x in worlds}}, {})
    with pytest.raises(ModelError, match="combination"):
        InteractionModel(base, closure="explicit")


def _laws(m, rng):
    states = m.states
    for s in states:
        assert m.meet(s, s) == s
        assert m.leq(s, s)
        for t in states:
            st = m.meet(s, t)
            assert st == m.meet(t, s)
            assert m.coherence_set(st) == m.coherence_set(s) & m.coherence_set(t)
            if m.leq(s, t) and m.leq(t, s):
                assert s == t
            if m.leq(s, t):
                assert m.coherence_set(s) <= m.coherence_set(t)
                for x in m.worlds:
                    assert m.interp(s, x) <= m.interp(t, x)
            for u in states:
                assert m.meet(st, u) == m.meet(s, m.meet(t, u))
                if m.leq(s, t) and m.leq(t, u):
                    assert m.leq(s, u)
        for x in m.worlds:
            expected = frozenset(m.worlds)
            for g in s:
                expected &= m.base.interp(g, x)
            assert m.interp(s, x) == expected
    assert check_e1(m).passed


@pytest.mark.parametrize("seed", range(40))
def test_interaction_laws(seed):
    rng = random.Random(seed)
    m = random_model("interaction", SizeProfile(max_worlds=5, max_evidence=3), rng)
    _laws(m, rng)


@pytest.mark.parametrize("seed", range(40))
def test_box_matches_effort_knowledge_for_propositional(seed):
    rng = random.Random(seed)
    m = random_model("interaction", SizeProfile(max_worlds=5, max_evidence=3), rng)
    phi = random_formula(rng, (), ["p", "q"], 3)
    ev = Evaluator(m)
    for s in m.states:
        assert ev.truth_set(Box(phi), s) == ev.truth_set(EffortBox(Knows(phi)), s)


@pytest.mark.parametrize("seed", range(20))
def test_s4_box_and_k_box(seed):
    rng = random.Random(seed)
    m = random_model("interaction", SizeProfile(max_worlds=4, max_evidence=3), rng)
    ev = Evaluator(m)
    for _ in range(4):
        phi = random_formula(rng, (Knows, Box), ["p", "q"], 2)
        for text in ("[]phi -> phi", "[]phi -> [][]phi", "K phi -> []phi",
                     "<>phi <-> ~[]~phi"):
            f = parse(text.replace("phi", "(%s)" % phi))
            for s in m.states:
                assert ev.truth_set(f, s) == m.coherence_set(s)


def test_memo_free_effort_agrees(gens):
    f = parse("[*](K p | <*>E p) & <>[]p")
    for s in gens.states:
        assert Evaluator(gens).truth_set(f, s) == Evaluator(gens, memo=False).truth_set(f, s)
