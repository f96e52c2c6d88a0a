"""Canned models: discretized clock examples and a small named gallery.

Clock positions are minutes on a 60-minute dial. A grid of ``resolution``
points puts positions at multiples of ``60/resolution``; world ids are the
exact positions rendered by :class:`fractions.Fraction` (``"15"``, ``"15/2"``).
Open intervals become strict inequalities on the grid.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ModelError
from .interaction import InteractionModel
from .models import EvidenceModel, RelationalModel
from .translate import subset_space_to_evidence

__all__ = ["clock_example1", "clock_example2", "gallery", "GALLERY_NAMES",
           "DEFAULT_MU_GRID", "CLOCK_STATE"]

CLOCK_STATE = "e"
DEFAULT_MU_GRID = tuple("0.%d" % k for k in range(1, 10))
_LIMIT = Fraction(30)


def _grid(resolution: int) -> list:
    if not isinstance(resolution, int) or resolution < 60 or resolution % 60:
        raise ModelError("resolution must be a positive multiple of 60, got %r" % (resolution,))
    step = Fraction(60, resolution)
    return [k * step for k in range(resolution)]


def _position_atoms(grid, world_ids) -> dict:
    """pos_t for every integer minute t, true exactly at position t."""
    return {"pos_%d" % c: list(world_ids[c]) for c in grid if c.denominator == 1}


def clock_example1(resolution: int = 60) -> EvidenceModel:
    """The clock with one evidence state whose reading at c is (c/2, (c+30)/2)."""
    grid = _grid(resolution)
    ids = {c: str(c) for c in grid}
    interp = {}
    for c in grid:
        if 0 < c < _LIMIT:
            lo, hi = c / 2, (c + _LIMIT) / 2
            interp[ids[c]] = [ids[y] for y in grid if lo < y < hi]
    valuation = _position_atoms(grid, {c: [ids[c]] for c in grid})
    return EvidenceModel(ids.values(), [CLOCK_STATE], {CLOCK_STATE: interp}, valuation)


def clock_example2(resolution: int = 60, mu_grid=DEFAULT_MU_GRID) -> EvidenceModel:
    """The clock with an unknown precision mu; worlds are ``"<c>@<mu>"``.

    The reading at (c, mu) is ((1-mu)c, (1-mu)c + 30mu) on the position axis
    and says nothing about mu.
    """
    grid = _grid(resolution)
    mus = []
    for raw in mu_grid:
        text = str(raw)
        try:
            mu = Fraction(text)
        except ValueError:
            raise ModelError("bad precision value %r" % (raw,), "/mu") from None
        if not 0 < mu < 1:
            raise ModelError("precision %s is not strictly between 0 and 1" % text, "/mu")
        if any(mu == m for _, m in mus):
            raise ModelError("duplicate precision %s" % text, "/mu")
        mus.append((text, mu))
    if not {Fraction(3, 10), Fraction(2, 5)} <= {m for _, m in mus}:
        raise ModelError("precision grid must contain 0.3 and 0.4", "/mu")

    def wid(c, text):
        return "%s@%s" % (c, text)

    interp = {}
    for c in grid:
        if not 0 < c < _LIMIT:
            continue
        for text, mu in mus:
            lo = (1 - mu) * c
            hi = lo + _LIMIT * mu
            inside = [y for y in grid if lo < y < hi]
            interp[wid(c, text)] = [wid(y, t) for y in inside for t, _ in mus]
    worlds = [wid(c, t) for c in grid for t, _ in mus]
    valuation = _position_atoms(grid, {c: [wid(c, t) for t, _ in mus] for c in grid})
    return EvidenceModel(worlds, [CLOCK_STATE], {CLOCK_STATE: interp}, valuation)


def _two_world():
    return EvidenceModel(["a", "b"], ["e"], {"e": {"a": ["a", "b"], "b": ["b"]}},
                         {"p": ["a"]})


def _chain3():
    return EvidenceModel(["a", "b", "c"], ["e"],
                         {"e": {"a": ["a", "b"], "b": ["b", "c"], "c": ["c"]}},
                         {"p": ["a", "b"]})


def _constant_generators():
    worlds = ["a", "b", "c"]
    base = EvidenceModel(worlds, ["g1", "g2"],
                         {"g1": {x: ["a", "b"] for x in worlds},
                          "g2": {x: ["b", "c"] for x in worlds}},
                         {"p": ["b"]})
    return InteractionModel(base)


def _upset2():
    return RelationalModel(["1", "2"], "knowability", [("1", "1"), ("2", "2")],
                           {"p": ["2"]}, r_box=[("1", "1"), ("2", "2"), ("1", "2")])


def _ssm_collapse():
    return subset_space_to_evidence(["1", "2", "3"], [{"1", "2"}, {"3"}],
                                    {"p": ["1"], "q": ["1", "2"]})


_BUILDERS = {
    "two-world": _two_world,
    "chain3": _chain3,
    "constant-generators": _constant_generators,
    "upset2": _upset2,
    "ssm-collapse": _ssm_collapse,
    "clock1": clock_example1,
    "clock2": clock_example2,
}

GALLERY_NAMES = tuple(_BUILDERS)


def gallery(name: str = None):
    """All named models as a dict, or the single model called ``name``."""
    if name is None:
        return {n: build() for n, build in _BUILDERS.items()}
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise ModelError("unknown corpus model %r (known: %s)"
                         % (name, ", ".join(GALLERY_NAMES))) from None
