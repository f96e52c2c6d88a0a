"""Seeded random formulas and models for property runs and fuzzing.

Every trial gets its own generator, ``random.Random(f"{seed}:{trial}")``, so
a trial's output depends only on the seed and its index and never on how
trials are spread across worker processes.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .belief import least_e2_superset
from .errors import ModelError
from .interaction import InteractionModel
from .models import EvidenceModel, RelationalModel
from .syntax import (And, Atom, Believes, Bottom, Box, Diamond, Entails, Iff, Implies, Knows,
                     Not, Or, Top)

__all__ = ["SizeProfile", "trial_rng", "random_formula", "random_model", "map_trials",
           "MODEL_CLASSES", "OPERATORS_FOR"]

MODEL_CLASSES = (
    "evidence", "doxastic", "doxastic-e2", "interaction",
    "relational", "relational-doxastic", "relational-doxastic-e2", "relational-knowability",
)

# modal operators a random formula may use, per language
OPERATORS_FOR = {
    "EK": (Knows, Entails),
    "EKB": (Knows, Entails, Believes),
    "EKK": (Knows, Entails, Box, Diamond),
    "BOX": (Box, Diamond),
}

_BINARY = (And, Or, Implies, Iff)


@dataclass(frozen=True)
class SizeProfile:
    """Bounds for random models; ``density`` is the chance of each membership."""

    min_worlds: int = 1
    max_worlds: int = 4
    min_evidence: int = 1
    max_evidence: int = 2
    atoms: int = 2
    density: float = 0.4

    def __post_init__(self):
        if not 1 <= self.min_worlds <= self.max_worlds:
            raise ModelError("world range %d..%d is empty or starts below 1"
                             % (self.min_worlds, self.max_worlds))
        if not 1 <= self.min_evidence <= self.max_evidence:
            raise ModelError("evidence range %d..%d is empty or starts below 1"
                             % (self.min_evidence, self.max_evidence))
        if self.atoms < 1:
            raise ModelError("profile needs at least one atom")
        if not 0.0 <= self.density <= 1.0:
            raise ModelError("density must lie in [0, 1]")

    def atom_names(self) -> list:
        if self.atoms <= 4:
            return list("pqrs"[:self.atoms])
        return ["p%d" % i for i in range(self.atoms)]


def trial_rng(seed, trial: int) -> random.Random:
    return random.Random("%s:%d" % (seed, trial))


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(str(seed))


def random_formula(rng: random.Random, ops, atoms, depth: int):
    """A formula of height at most ``depth`` over ``atoms`` using modal ``ops``."""
    if depth <= 0 or rng.random() < 0.25:
        roll = rng.random()
        if roll < 0.05:
            return Top()
        if roll < 0.1:
            return Bottom()
        return Atom(rng.choice(atoms))
    kinds = list(ops) + [Not]
    roll = rng.random()
    if roll < 0.55 and kinds:
        op = rng.choice(kinds)
        return op(random_formula(rng, ops, atoms, depth - 1))
    op = rng.choice(_BINARY)
    return op(random_formula(rng, ops, atoms, depth - 1),
              random_formula(rng, ops, atoms, depth - 1))


def _subset(rng, items, density):
    return [x for x in items if rng.random() < density]


def _valuation(rng, worlds, profile):
    return {p: _subset(rng, worlds, 0.5) for p in profile.atom_names()}


def _evidence_model(rng, profile, n_evidence=None, beliefs=None, e2=False):
    n = rng.randint(profile.min_worlds, profile.max_worlds)
    k = n_evidence or rng.randint(profile.min_evidence, profile.max_evidence)
    worlds = ["w%d" % i for i in range(n)]
    evidence = ["e%d" % i for i in range(k)]
    interp = {}
    for e in evidence:
        rows = {x: set(_subset(rng, worlds, profile.density)) for x in worlds}
        # (E1) repair: anything ruled in somewhere must cohere with itself
        for x in worlds:
            for y in list(rows[x]):
                rows[y].add(y)
        interp[e] = {x: sorted(rows[x]) for x in worlds}
    model = EvidenceModel(worlds, evidence, interp, _valuation(rng, worlds, profile))
    if not beliefs:
        return model
    chosen = {}
    for e in evidence:
        u = model.sort(model.coherence_set(e))
        if not u:
            continue
        v = _subset(rng, u, profile.density) or [rng.choice(u)]
        if e2:
            v = least_e2_superset(model, e, v)
        chosen[e] = v
    return EvidenceModel(worlds, evidence, interp, model.valuation, chosen)


def _relational(rng, profile, kind, e2=False):
    n = rng.randint(profile.min_worlds, profile.max_worlds)
    worlds = ["w%d" % i for i in range(n)]
    r_e = {(x, x) for x in worlds} | {(x, y) for x in worlds for y in worlds
                                       if rng.random() < profile.density}
    valuation = _valuation(rng, worlds, profile)
    if kind == "evidence":
        return RelationalModel(worlds, "evidence", r_e, valuation)
    if kind == "doxastic":
        image = set(_subset(rng, worlds, profile.density)) or {rng.choice(worlds)}
        if e2:
            frontier = list(image)
            while frontier:
                y = frontier.pop()
                for a, b in r_e:
                    if a == y and b not in image:
                        image.add(b)
                        frontier.append(b)
        r_b = {(x, y) for x in worlds for y in image}
        return RelationalModel(worlds, "doxastic", r_e, valuation, r_b=r_b)
    box = {(x, x) for x in worlds} | {(x, y) for x in worlds for y in worlds
                                       if rng.random() < profile.density}
    changed = True
    while changed:  # transitive closure
        changed = False
        for a, b in list(box):
            for c, d in list(box):
                if b == c and (a, d) not in box:
                    box.add((a, d))
                    changed = True
    return RelationalModel(worlds, "knowability", r_e, valuation, r_box=box)


def random_model(model_class: str, profile: SizeProfile = None, seed=0):
    """Sample a model of ``model_class`` honoring its invariants.

    ``seed`` may be any hashable seed or a ready ``random.Random``.
    """
    profile = profile or SizeProfile()
    rng = _rng(seed)
    if model_class == "evidence":
        return _evidence_model(rng, profile)
    if model_class == "doxastic":
        return _evidence_model(rng, profile, beliefs=True)
    if model_class == "doxastic-e2":
        return _evidence_model(rng, profile, beliefs=True, e2=True)
    if model_class == "interaction":
        k = rng.randint(profile.min_evidence, min(profile.max_evidence, 3))
        return InteractionModel(_evidence_model(rng, profile, n_evidence=k))
    if model_class == "relational":
        return _relational(rng, profile, "evidence")
    if model_class == "relational-doxastic":
        return _relational(rng, profile, "doxastic")
    if model_class == "relational-doxastic-e2":
        return _relational(rng, profile, "doxastic", e2=True)
    if model_class == "relational-knowability":
        return _relational(rng, profile, "knowability")
    raise ModelError("unknown model class %r (known: %s)" % (model_class, ", ".join(MODEL_CLASSES)))


def _run_chunk(fn, indices):
    return [fn(i) for i in indices]


def map_trials(fn, trials: int, workers: int = 1) -> list:
    """``[fn(0), ..., fn(trials-1)]``, optionally spread over worker processes.

    ``fn`` must be picklable when ``workers > 1``; results keep trial order.
    """
    if workers <= 1 or trials <= 1:
        return [fn(i) for i in range(trials)]
    size = -(-trials // workers)
    chunks = [range(a, min(a + size, trials)) for a in range(0, trials, size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_run_chunk, [fn] * len(chunks), chunks)
        return [r for part in parts for r in part]
