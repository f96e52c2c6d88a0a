"""Belief ladders: iterating a conjecture through evidence interpretations.

Starting from a conjecture V1, each level is the union of the
interpretations of the previous level's worlds. On (E1) models with V1
inside U_e the levels grow monotonically and stabilise at the least
superset of V1 that is closed under interpretation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ModelError
from .models import check_e1

__all__ = ["BeliefLadder", "ladder", "least_e2_superset"]


@dataclass(frozen=True)
class BeliefLadder:
    evidence: object
    levels: tuple  # V1 .. V_k*, each a frozenset
    closure: frozenset
    nested: bool

    @property
    def fixpoint(self) -> int:
        """k*: number of distinct levels computed."""
        return len(self.levels)

    def to_dict(self, model) -> dict:
        return {
            "evidence": model.state_name(self.evidence),
            "levels": [model.sort(v) for v in self.levels],
            "closure": model.sort(self.closure),
            "fixpoint": self.fixpoint,
            "nested": self.nested,
        }


def _step(m, e, v: frozenset) -> frozenset:
    return frozenset().union(*(m.interp(e, y) for y in v))


def ladder(m, e, v1, strict: bool = True) -> BeliefLadder:
    """Compute V1, V2, ... until the sequence stops producing new levels.

    Strict mode requires V1 inside U_e and (E1) for ``e``. Any V1 inside
    U_e already forces nested levels; permissive mode also accepts worlds
    outside U_e, where the literal iteration may shrink or cycle, and
    reports that through ``nested``. The closure is always the union of
    all levels.
    """
    m.check_state(e)
    v1 = frozenset(v1)
    if not v1:
        raise ModelError("initial conjecture must be nonempty")
    for y in v1:
        m.check_world(y)
    outside = v1 - m.coherence_set(e)
    if outside and strict:
        raise ModelError("initial conjecture world %r is not in U_%s"
                         % (m.sort(outside)[0], m.state_name(e)))
    if strict:
        report = check_e1(m, [e])
        if not report.passed:
            raise ModelError("evidence state %s violates (E1), witness %r; "
                             "use strict=False for the literal iteration"
                             % (m.state_name(e), report.results[0].witness))
    levels = [v1]
    seen = {v1}
    while True:
        nxt = _step(m, e, levels[-1])
        if nxt in seen:
            break
        seen.add(nxt)
        levels.append(nxt)
    nested = all(a <= b for a, b in zip(levels, levels[1:]))
    if nested and nxt != levels[-1]:
        nested = False  # fell back to an earlier, smaller level
    closure = frozenset().union(*levels)
    return BeliefLadder(e, tuple(levels), closure, nested)


def least_e2_superset(m, e, v) -> frozenset:
    """The smallest W containing ``v`` with I_e(y) inside W for every y in W."""
    m.check_state(e)
    result = set(v)
    for y in result:
        m.check_world(y)
    frontier = list(result)
    while frontier:
        y = frontier.pop()
        for z in m.interp(e, y):
            if z not in result:
                result.add(z)
                frontier.append(z)
    return frozenset(result)
