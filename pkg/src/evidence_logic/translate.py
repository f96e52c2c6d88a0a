"""Model constructions between relational, subset-space and evidence models.

The relational evaluator below is deliberately separate from
:mod:`evidence_logic.checker`: the equivalence checks compare two
independently written semantics.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .checker import Evaluator
from .errors import BoundError, LanguageError, ModelError
from .interaction import InteractionModel
from .models import EvidenceModel, RelationalModel
from .syntax import (And, Atom, Believes, Bottom, Box, Diamond, Entails, Formula, Iff,
                     Implies, Knows, Not, Or, Top, to_text)

__all__ = [
    "relational_truth_set", "relational_holds", "relational_to_evidence",
    "subset_space_to_evidence", "doxastic_to_evidence", "knowability_to_interaction",
    "upsets", "translate", "verify_equivalence", "EquivalenceReport",
    "DEFAULT_UPSET_CAP", "Translation", "equivalence_trials",
]

DEFAULT_UPSET_CAP = 15


# -- relational semantics ----------------------------------------------------

def relational_truth_set(m: RelationalModel, f: Formula) -> frozenset:
    """Worlds of ``m`` satisfying ``f`` under Kripke semantics.

    E and B quantify over R_E / R_B successors, box over R_Box successors,
    and K is the universal modality.
    """
    everything = frozenset(m.worlds)

    def ev(g):
        if isinstance(g, Atom):
            return m.atom(g.name)
        if isinstance(g, Top):
            return everything
        if isinstance(g, Bottom):
            return frozenset()
        if isinstance(g, Not):
            return everything - ev(g.arg)
        if isinstance(g, And):
            return ev(g.left) & ev(g.right)
        if isinstance(g, Or):
            return ev(g.left) | ev(g.right)
        if isinstance(g, Implies):
            return (everything - ev(g.left)) | ev(g.right)
        if isinstance(g, Iff):
            return everything - (ev(g.left) ^ ev(g.right))
        if isinstance(g, Knows):
            return everything if ev(g.arg) == everything else frozenset()
        if isinstance(g, (Entails, Believes, Box, Diamond)):
            which = {Entails: "e", Believes: "b", Box: "box", Diamond: "box"}[type(g)]
            if which == "b" and m.kind != "doxastic":
                raise LanguageError("B needs a doxastic relational model")
            if which == "box" and m.kind != "knowability":
                raise LanguageError("box needs a knowability relational model")
            inner = ev(g.arg)
            if isinstance(g, Diamond):
                return frozenset(x for x in m.worlds if m.image(which, x) & inner)
            return frozenset(x for x in m.worlds if m.image(which, x) <= inner)
        raise LanguageError("no relational clause for %s" % to_text(g))

    return ev(f)


def relational_holds(m: RelationalModel, x: str, f: Formula) -> bool:
    return x in relational_truth_set(m, f)


# -- constructions -----------------------------------------------------------

SINGLE_STATE = "e"


def _require(m: RelationalModel, kind: str) -> None:
    if m.kind != kind:
        raise ModelError("expected a %s relational model, got %s" % (kind, m.kind), "/kind")


def _single_state_model(m: RelationalModel, beliefs=None) -> EvidenceModel:
    interp = {SINGLE_STATE: {x: m.image("e", x) for x in m.worlds}}
    return EvidenceModel(m.worlds, [SINGLE_STATE], interp, m.valuation, beliefs)


def relational_to_evidence(m: RelationalModel) -> EvidenceModel:
    """One evidence state ``e`` with I_e(x) = R_E(x)."""
    _require(m, "evidence")
    return _single_state_model(m)


def doxastic_to_evidence(m: RelationalModel):
    """Single-state evidence model plus the conjecture V = the common R_B image."""
    _require(m, "doxastic")
    v = m.belief_image
    return _single_state_model(m, {SINGLE_STATE: v}), v


def subset_space_to_evidence(worlds, family, valuation) -> EvidenceModel:
    """One evidence state ``e<i>`` per member U of ``family``, with I constant U."""
    worlds = tuple(worlds)
    ranges = []
    for u in family:
        u = frozenset(u)
        if u not in ranges:
            ranges.append(u)
    if not ranges:
        raise ModelError("subset space needs at least one epistemic range")
    evidence = ["e%d" % i for i in range(len(ranges))]
    interp = {e: {x: u for x in worlds} for e, u in zip(evidence, ranges)}
    return EvidenceModel(worlds, evidence, interp, valuation)


def upsets(m: RelationalModel, cap: int = DEFAULT_UPSET_CAP) -> list:
    """All R_Box-upward-closed subsets of the worlds, empty set and X included.

    Enumerated by filtering every subset, in increasing bitmask order.
    """
    _require(m, "knowability")
    n = len(m.worlds)
    if n > cap:
        raise BoundError("%d worlds exceed the upset enumeration cap of %d" % (n, cap))
    succ = [0] * n
    index = {x: i for i, x in enumerate(m.worlds)}
    for x, y in m.r_box:
        succ[index[x]] |= 1 << index[y]
    out = []
    for mask in range(1 << n):
        if all(succ[i] & ~mask == 0 for i in range(n) if mask >> i & 1):
            out.append(frozenset(m.worlds[i] for i in range(n) if mask >> i & 1))
    return out


def _upset_id(m: RelationalModel, s: frozenset) -> str:
    return "{" + ",".join(m.sort(s)) + "}"


def knowability_to_interaction(m: RelationalModel, cap: int = DEFAULT_UPSET_CAP,
                               use_r_e: bool = True):
    """Interaction model over the upsets of (X, R_Box); returns (model, designated).

    State ``e_U`` interprets x as U & R_E(x); combination is intersection of
    upsets and the designated state is the one for X. With ``use_r_e=False``
    the interpretation is the constant U, which suffices for box-only
    formulas.
    """
    family = upsets(m, cap)
    ids = [_upset_id(m, u) for u in family]
    interp = {}
    for sid, u in zip(ids, family):
        interp[sid] = {x: (u & m.image("e", x)) if use_r_e else u for x in m.worlds}
    base = EvidenceModel(m.worlds, ids, interp, m.valuation)
    top = _upset_id(m, frozenset(m.worlds))
    # upsets are closed under intersection, so the meet check is skipped
    return InteractionModel(base, closure="explicit", designated=top,
                            validate_meets=False), top


@dataclass(frozen=True)
class Translation:
    model: object
    designated: object
    belief: object = None


def translate(m: RelationalModel, cap: int = DEFAULT_UPSET_CAP) -> Translation:
    """Apply the construction matching the relational class of ``m``."""
    if m.kind == "evidence":
        return Translation(relational_to_evidence(m), SINGLE_STATE)
    if m.kind == "doxastic":
        model, v = doxastic_to_evidence(m)
        return Translation(model, SINGLE_STATE, v)
    model, top = knowability_to_interaction(m, cap)
    return Translation(model, top)


# -- equivalence -------------------------------------------------------------

@dataclass
class EquivalenceReport:
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def agreed(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {"checked": self.checked, "mismatches": self.mismatches}


def verify_equivalence(before: RelationalModel, after, formulas, designated=None,
                       belief=None, report: EquivalenceReport = None) -> EquivalenceReport:
    """Compare relational truth with evidence truth at the designated scenario.

    Every formula is evaluated at every world on both sides; disagreements
    are recorded with the formula, world and both truth values.
    """
    if set(before.worlds) != set(after.worlds):
        raise ModelError("translated model has a different set of worlds")
    if designated is None:
        designated = getattr(after, "designated", None)
        if designated is None:
            if len(after.states) != 1:
                raise ModelError("designated evidence state required")
            designated = after.states[0]
    report = report if report is not None else EquivalenceReport()
    ev = Evaluator(after, belief)
    for f in formulas:
        rel = relational_truth_set(before, f)
        evi = ev.truth_set(f, designated)
        for x in before.worlds:
            report.checked += 1
            if (x in rel) != (x in evi):
                report.mismatches.append({
                    "formula": to_text(f), "world": x,
                    "relational": x in rel, "evidence": x in evi,
                })
    return report


# -- randomized equivalence runs --------------------------------------------

_TRIAL_LANGUAGE = {
    "relational": ("EK", 4),
    "relational-doxastic": ("EKB", 3),
    "relational-doxastic-e2": ("EKB", 3),
    "relational-knowability": ("EKK", 3),
}


def _equivalence_trial(kind, seed, profile, depth, per_model, trial):
    from .sampling import OPERATORS_FOR, random_formula, random_model, trial_rng

    rng = trial_rng(seed, trial)
    m = random_model(kind, profile, rng)
    language, default_depth = _TRIAL_LANGUAGE[kind]
    d = default_depth if depth is None else depth
    formulas = [random_formula(rng, OPERATORS_FOR[language], profile.atom_names(), d)
                for _ in range(per_model)]
    t = translate(m)
    rep = verify_equivalence(m, t.model, formulas, t.designated, t.belief)
    for miss in rep.mismatches:
        miss["trial"] = trial
    return rep.checked, rep.mismatches


def equivalence_trials(kind: str, trials: int, seed=0, profile=None, depth=None,
                       per_model: int = 5, workers: int = 1) -> EquivalenceReport:
    """Translate random relational models of ``kind`` and compare both semantics.

    Formula height defaults to 4 for the E/K language and 3 otherwise.
    """
    from functools import partial

    from .sampling import SizeProfile, map_trials

    if kind not in _TRIAL_LANGUAGE:
        raise ModelError("no equivalence run for %r (known: %s)"
                         % (kind, ", ".join(_TRIAL_LANGUAGE)))
    profile = profile or SizeProfile(max_worlds=6)
    fn = partial(_equivalence_trial, kind, seed, profile, depth, per_model)
    report = EquivalenceReport()
    for checked, misses in map_trials(fn, trials, workers):
        report.checked += checked
        report.mismatches.extend(misses)
    return report
