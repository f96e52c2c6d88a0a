import pytest

from evidence_logic.documents import dumps_model
from evidence_logic.errors import ModelError
from evidence_logic.models import check_e1, check_e2
from evidence_logic.sampling import (MODEL_CLASSES, SizeProfile, map_trials, random_formula,
                                     random_model, trial_rng)
from evidence_logic.syntax import Knows, height, to_text


def test_one_point_profile():
    profile = SizeProfile(max_worlds=1, max_evidence=1)
    seen = set()
    for seed in range(40):
        m = random_model("evidence", profile, seed)
        assert m.worlds == ("w0",) and m.states == ("e0",)
        seen.add(m.interp("e0", "w0"))
    assert seen == {frozenset(), frozenset({"w0"})}


@pytest.mark.parametrize("cls", MODEL_CLASSES)
def test_seed_reproducible(cls):
    a = [dumps_model(random_model(cls, seed=s)) for s in range(20)]
    b = [dumps_model(random_model(cls, seed=s)) for s in range(20)]
    assert a == b


def _dump(i):
    return dumps_model(random_model("interaction", seed=trial_rng(5, i)))


def test_reproducible_across_workers():
    assert map_trials(_dump, 12, workers=1) == map_trials(_dump, 12, workers=4)


def test_e1_class_always_passes():
    for seed in range(10_000):
        assert check_e1(random_model("evidence", seed=seed)).passed


@pytest.mark.parametrize("seed", range(200))
def test_doxastic_classes(seed):
    m = random_model("doxastic-e2", seed=seed)
    for e, v in m.beliefs.items():
        assert v and v <= m.coherence_set(e)
        assert check_e2(m, e, v).passed


def test_formula_height_bound():
    rng = trial_rng("h", 0)
    for _ in range(500):
        f = random_formula(rng, (Knows,), ["p"], 3)
        assert height(f) <= 3
        assert set(to_text(f)) <= set("Kp~&|-><()truefalse ")


@pytest.mark.parametrize("kwargs", [dict(min_worlds=0), dict(min_worlds=3, max_worlds=2),
                                    dict(atoms=0), dict(density=1.5),
                                    dict(min_evidence=2, max_evidence=1)])
def test_bad_profiles(kwargs):
    with pytest.raises(ModelError):
        SizeProfile(**kwargs)


def test_unknown_class():
    with pytest.raises(ModelError):
        random_model("topological")
