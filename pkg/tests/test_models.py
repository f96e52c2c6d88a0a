import json

import pytest
from hypothesis import given, settings, strategies as st

from evidence_logic.documents import dumps_model, loads_model, model_from_dict
from evidence_logic.errors import ModelError, ScenarioError
from evidence_logic.models import (EvidenceModel, RelationalModel, check_e1, check_e2,
                                   coherence_set, make_scenario)
from evidence_logic.sampling import SizeProfile, random_model

TWO_WORLD_DOC = ('{"kind":"evidence","worlds":["a","b"],"evidence":["e"],'
                 '"interpretation":{"e":{"a":["a","b"],"b":["b"]}},"valuation":{"p":["a"]}}')


def single(rows, worlds=None):
    worlds = worlds or sorted(rows)
    return EvidenceModel(worlds, ["e"], {"e": rows}, {})


def test_coherence_examples(clock1):
    assert coherence_set(clock1, "e") == {str(c) for c in range(1, 30)}
    ident = single({x: [x] for x in "abc"})
    assert coherence_set(ident, "e") == {"a", "b", "c"}
    m = single({"a": ["a", "b"], "b": ["b", "c"], "c": ["c"]})
    assert coherence_set(m, "e") == {"a", "b", "c"}


def test_unknown_state_rejected(two_world):
    with pytest.raises(ModelError):
        coherence_set(two_world, "nope")


def test_e1_examples(clock1):
    assert check_e1(clock1).passed
    ok = single({"a": ["b"], "b": ["b"]})
    rep = check_e1(ok)
    assert rep.passed and coherence_set(ok, "e") == {"b"}
    assert rep.for_state("e").union_equals_coherence
    bad = single({"a": ["a", "b"], "b": []})
    rep = check_e1(bad)
    assert not rep.passed
    assert rep.for_state("e").witness == ("e", "a", "b")
    assert not rep.for_state("e").union_equals_coherence


def test_e2_examples(clock1, chain3):
    assert check_e2(chain3, "e", coherence_set(chain3, "e")).passed
    rep = check_e2(clock1, "e", {str(c) for c in range(11, 20)})
    assert not rep.passed
    y, z = rep.witness
    assert y in {str(c) for c in range(11, 20)} and z in clock1.interp("e", y)
    assert check_e2(clock1, "e", set()).passed


def test_scenarios(two_world):
    s = make_scenario(two_world, "a", "e")
    assert (s.world, s.evidence, s.belief) == ("a", "e", None)
    m = single({"a": ["b"], "b": ["b"]})
    with pytest.raises(ScenarioError, match="not an evidence scenario"):
        make_scenario(m, "a", "e")
    with pytest.raises(ScenarioError):
        make_scenario(two_world, "a", "e", [])
    with pytest.raises(ScenarioError, match="x"):
        make_scenario(m, "b", "e", ["x"])
    d = make_scenario(two_world, "a", "e", ["b"])
    assert d.belief == {"b"}


def test_load_two_world_document():
    m = loads_model(TWO_WORLD_DOC)
    assert isinstance(m, EvidenceModel)
    assert coherence_set(m, "e") == {"a", "b"}


def test_belief_outside_coherence_names_world():
    doc = {"kind": "evidence", "worlds": ["a", "b"], "evidence": ["e"],
           "interpretation": {"e": {"a": ["b"], "b": ["b"]}}, "valuation": {},
           "belief": ["a", "b"]}
    with pytest.raises(ModelError, match="'a'") as info:
        model_from_dict(doc)
    assert info.value.path == "/belief/e"


def test_non_transitive_box_rejected():
    doc = {"kind": "relational-knowability", "worlds": ["1", "2", "3"],
           "R_E": [["1", "1"], ["2", "2"], ["3", "3"]],
           "R_Box": [["1", "1"], ["2", "2"], ["3", "3"], ["1", "2"], ["2", "3"]],
           "valuation": {}}
    with pytest.raises(ModelError, match="transitive") as info:
        model_from_dict(doc)
    assert info.value.path == "/R_Box"


@pytest.mark.parametrize("doc, path", [
    ({"kind": "evidence", "worlds": ["a"], "evidence": ["e"],
      "interpretation": {"e": {"a": ["z"]}}}, "/interpretation/e/a/0"),
    ({"kind": "evidence", "worlds": ["a"], "evidence": ["e"],
      "interpretation": {"f": {}}}, "/interpretation/f"),
    ({"kind": "evidence", "worlds": [], "evidence": ["e"]}, "/worlds"),
    ({"kind": "evidence", "worlds": ["a", "a"], "evidence": ["e"]}, "/worlds/1"),
    ({"kind": "relational", "worlds": ["a"], "R_E": []}, "/R_E"),
    ({"kind": "relational-doxastic", "worlds": ["a", "b"],
      "R_E": [["a", "a"], ["b", "b"]], "R_B": [["a", "a"]]}, "/R_B"),
    ({"kind": "mystery", "worlds": ["a"]}, "/kind"),
    ({"kind": "evidence", "worlds": ["a"], "evidence": ["e"],
      "valuation": {"p": ["q"]}}, "/valuation/p/0"),
])
def test_validation_paths(doc, path):
    with pytest.raises(ModelError) as info:
        model_from_dict(doc)
    assert info.value.path == path


def test_bad_json():
    with pytest.raises(ModelError, match="JSON"):
        loads_model("{nope")


def test_empty_coherence_allowed():
    m = single({"a": ["b"]}, ["a", "b"])
    assert coherence_set(m, "e") == frozenset()


@pytest.mark.parametrize("cls", ["evidence", "doxastic", "interaction", "relational",
                                 "relational-doxastic", "relational-knowability"])
@pytest.mark.parametrize("seed", range(15))
def test_save_load_round_trip(cls, seed):
    m = random_model(cls, SizeProfile(max_worlds=4, max_evidence=3), seed)
    again = loads_model(dumps_model(m))
    assert json.loads(dumps_model(again)) == json.loads(dumps_model(m))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.data())
def test_coherence_vs_union(n, data):
    worlds = ["w%d" % i for i in range(n)]
    rows = {x: data.draw(st.sets(st.sampled_from(worlds))) for x in worlds}
    m = single({x: sorted(v) for x, v in rows.items()}, worlds)
    u = coherence_set(m, "e")
    union = frozenset().union(*rows.values())
    assert u <= union
    assert (u == union) == check_e1(m).passed


def test_relational_classes():
    r = RelationalModel(["a", "b"], "doxastic", [("a", "a"), ("b", "b")], {},
                        r_b=[("a", "b"), ("b", "b")])
    assert r.belief_image == {"b"}
    with pytest.raises(ModelError, match="reflexive"):
        RelationalModel(["a"], "evidence", [], {})
    with pytest.raises(ModelError):
        RelationalModel(["a"], "evidence", [("a", "a")], {}, r_box=[("a", "a")])
