"""Truth-set evaluation at evidence scenarios and doxastic evidence scenarios.

Truth sets are relative to an evidence state: the truth set of ``phi`` at
``e`` is the set of worlds ``x`` in U_e with ``(x, e) |= phi``. Every clause
is computed set-at-a-time over U_e, so one recursion yields the value at all
scenarios sharing ``e``.

The knowledge clause is the general one (the union of all interpretations
of ``e`` must lie inside the truth set), which coincides with the U_e clause
exactly on (E1) models.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import LanguageError, ModelError, ScenarioError
from .models import check_e1, make_scenario
from .syntax import (And, Atom, Believes, Bottom, Box, Diamond, EffortBox, EffortDiamond,
                     Entails, Formula, Iff, Implies, Knows, Not, Or, Top, operators, to_text)

__all__ = ["TruthSet", "Evaluator", "truth_set", "holds", "explain", "TraceNode",
           "is_valid_in"]


@dataclass(frozen=True)
class TruthSet:
    evidence: object
    formula: Formula
    members: frozenset


def _check_language(model, f: Formula, belief) -> None:
    ops = operators(f)
    if Believes in ops and belief is None:
        raise LanguageError("formula %s uses B but no belief set was given" % to_text(f))
    knowability = ops & {Box, Diamond, EffortBox, EffortDiamond}
    if knowability and not hasattr(model, "below"):
        names = sorted(cls.symbol for cls in knowability)
        raise LanguageError("operators %s need an evidence interaction model" % ", ".join(names))
    if Believes in ops and ops & {EffortBox, EffortDiamond}:
        raise LanguageError("B cannot be combined with the effort operator: "
                            "the belief set is tied to a single evidence state")


class Evaluator:
    """Memoizing evaluator for one model and one (optional) belief set.

    Results are cached by ``(formula, state)``. Caching never changes an
    answer; ``memo=False`` turns it off for cross-checking.
    """

    def __init__(self, model, belief=None, memo: bool = True, strict_e1: bool = False):
        self.model = model
        self.belief = frozenset(belief) if belief is not None else None
        self.memo = memo
        self.strict_e1 = strict_e1
        self._cache: dict = {}
        self._checked: set = set()

    def truth_set(self, f: Formula, e) -> frozenset:
        """Members of the truth set of ``f`` at evidence state ``e``."""
        m = self.model
        m.check_state(e)
        if (f, e) not in self._checked:
            _check_language(m, f, self.belief)
            if self.belief is not None and operators(f) & {Believes}:
                self._check_belief(e)
            if self.strict_e1:
                report = check_e1(m, [e])
                if not report.passed:
                    raise ModelError("strict mode: evidence state %s violates (E1), witness %r"
                                     % (m.state_name(e), report.results[0].witness))
            self._checked.add((f, e))
        return self._eval(f, e)

    def _check_belief(self, e) -> None:
        if not self.belief:
            raise ScenarioError("belief set must be nonempty")
        outside = self.belief - self.model.coherence_set(e)
        if outside:
            raise ScenarioError("belief world %r is not in U_%s"
                                % (sorted(outside)[0], self.model.state_name(e)))

    def _eval(self, f: Formula, e) -> frozenset:
        if self.memo:
            cached = self._cache.get((f, e))
            if cached is not None:
                return cached
        result = self._compute(f, e)
        if self.memo:
            self._cache[f, e] = result
        return result

    def _compute(self, f: Formula, e) -> frozenset:
        m = self.model
        u = m.coherence_set(e)
        if isinstance(f, Atom):
            return m.atom(f.name) & u
        if isinstance(f, Top):
            return u
        if isinstance(f, Bottom):
            return frozenset()
        if isinstance(f, Not):
            return u - self._eval(f.arg, e)
        if isinstance(f, And):
            return self._eval(f.left, e) & self._eval(f.right, e)
        if isinstance(f, Or):
            return self._eval(f.left, e) | self._eval(f.right, e)
        if isinstance(f, Implies):
            return (u - self._eval(f.left, e)) | self._eval(f.right, e)
        if isinstance(f, Iff):
            return u - (self._eval(f.left, e) ^ self._eval(f.right, e))
        if isinstance(f, Entails):
            return self._entails(self._eval(f.arg, e), e)
        if isinstance(f, Knows):
            return self._knows(self._eval(f.arg, e), e)
        if isinstance(f, Believes):
            return u if self.belief <= self._eval(f.arg, e) else frozenset()
        if isinstance(f, Box):
            return self._box(self._eval(f.arg, e), e)
        if isinstance(f, Diamond):
            return u - self._box(u - self._eval(f.arg, e), e)
        if isinstance(f, EffortBox):
            return self._effort(f.arg, e)
        if isinstance(f, EffortDiamond):
            return u - self._effort(Not(f.arg), e)
        raise TypeError("not a formula: %r" % (f,))

    def _entails(self, target: frozenset, e) -> frozenset:
        m = self.model
        return frozenset(x for x in m.coherence_set(e) if m.interp(e, x) <= target)

    def _knows(self, target: frozenset, e) -> frozenset:
        m = self.model
        return m.coherence_set(e) if m.interp_union(e) <= target else frozenset()

    def _box(self, target: frozenset, e) -> frozenset:
        # x in U_{e+e'} within target, for some e'
        m = self.model
        out = set()
        for s in m.below(e):
            us = m.coherence_set(s)
            if us <= target:
                out |= us
        return frozenset(out) & m.coherence_set(e)

    def _effort(self, arg: Formula, e) -> frozenset:
        m = self.model
        out = set()
        for s in m.below(e):
            out |= self._eval(arg, s)
        return frozenset(out) & m.coherence_set(e)


def truth_set(m, e, f: Formula, v=None, strict_e1: bool = False,
              evaluator: Optional[Evaluator] = None) -> TruthSet:
    """Truth set of ``f`` at evidence state ``e`` (with conjecture ``v`` if given)."""
    ev = evaluator or Evaluator(m, v, strict_e1=strict_e1)
    return TruthSet(e, f, ev.truth_set(f, e))


def holds(m, s, f: Formula, strict_e1: bool = False,
          evaluator: Optional[Evaluator] = None) -> bool:
    """Whether ``f`` is true at scenario ``s`` of ``m``."""
    s = make_scenario(m, s.world, s.evidence, s.belief)
    ev = evaluator or Evaluator(m, s.belief, strict_e1=strict_e1)
    return s.world in ev.truth_set(f, s.evidence)


def is_valid_in(m, f: Formula, belief_sets=None) -> bool:
    """True when ``f`` holds at every (doxastic) scenario of ``m``.

    ``belief_sets`` maps evidence states to the conjectures to try; without
    it ``f`` must be B-free.
    """
    for e in m.states:
        u = m.coherence_set(e)
        for v in (belief_sets or {}).get(e, [None]):
            if Evaluator(m, v).truth_set(f, e) != u:
                return False
    return True


# -- evaluation traces ------------------------------------------------------

@dataclass
class TraceNode:
    """One step of an evaluation: clause applied, sets consulted, witness."""

    formula: Formula
    world: str
    evidence: str
    clause: str
    value: bool
    sets: dict = field(default_factory=dict)
    witness: Optional[str] = None
    witness_state: Optional[str] = None
    note: Optional[str] = None
    children: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {"formula": to_text(self.formula), "world": self.world,
             "evidence": self.evidence, "clause": self.clause, "value": self.value}
        if self.sets:
            d["sets"] = self.sets
        if self.witness is not None:
            d["witness"] = self.witness
        if self.witness_state is not None:
            d["witness_state"] = self.witness_state
        if self.note:
            d["note"] = self.note
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d

    def render(self, indent: int = 0, max_set: int = 24) -> str:
        pad = "  " * indent
        line = "%s%s at (%s, %s): %s [%s]" % (
            pad, to_text(self.formula), self.world, self.evidence,
            "true" if self.value else "false", self.clause)
        if self.witness is not None:
            line += " witness %s" % self.witness
        if self.witness_state is not None:
            line += " via state %s" % self.witness_state
        if self.note:
            line += " (%s)" % self.note
        lines = [line]
        for name, members in self.sets.items():
            shown = ", ".join(members[:max_set])
            if len(members) > max_set:
                shown += ", ... (%d more)" % (len(members) - max_set)
            lines.append("%s    %s = {%s}" % (pad, name, shown))
        for child in self.children:
            lines.append(child.render(indent + 1, max_set))
        return "\n".join(lines)


def explain(m, s, f: Formula, evaluator: Optional[Evaluator] = None) -> TraceNode:
    """Evaluation trace of ``f`` at scenario ``s``, mirroring the recursion.

    Failed universal clauses (E, K, B) carry the first counterexample world
    in model order and recurse into it; satisfied existential clauses
    (box, effort) name the evidence state that witnesses them.
    """
    s = make_scenario(m, s.world, s.evidence, s.belief)
    ev = evaluator or Evaluator(m, s.belief)
    ev.truth_set(f, s.evidence)  # language and belief checks
    return _trace(m, ev, f, s.world, s.evidence)


def _trace(m, ev: Evaluator, f: Formula, x, e) -> TraceNode:
    name = m.state_name(e)
    value = x in ev.truth_set(f, e)
    node = TraceNode(f, x, name, _CLAUSES[type(f)], value)
    srt = m.sort
    u = m.coherence_set(e)

    def child(g, y, state=e):
        if y in m.coherence_set(state):
            node.children.append(_trace(m, ev, g, y, state))
        else:
            node.note = "witness %s is not coherent with %s" % (y, m.state_name(state))

    if isinstance(f, Atom):
        node.sets["valuation(%s)" % f.name] = srt(m.atom(f.name))
    elif isinstance(f, (Not, And, Or, Implies, Iff)):
        for g in f.children():
            child(g, x)
    elif isinstance(f, (Entails, Knows, Believes)):
        target = ev.truth_set(f.arg, e)
        if isinstance(f, Entails):
            scope, label = m.interp(e, x), "I_%s(%s)" % (name, x)
        elif isinstance(f, Knows):
            scope, label = m.interp_union(e), "union of I_%s" % name
            node.sets["U_%s" % name] = srt(u)
        else:
            scope, label = ev.belief, "V"
        node.sets[label] = srt(scope)
        node.sets["truth set of %s" % to_text(f.arg)] = srt(target)
        if not value:
            node.witness = srt(scope - target)[0]
            child(f.arg, node.witness)
    elif isinstance(f, (Box, Diamond)):
        target = ev.truth_set(f.arg, e)
        if isinstance(f, Diamond):
            target = u - target
        node.sets["truth set of %s" % to_text(f.arg)] = srt(ev.truth_set(f.arg, e))
        found = None
        for t in m.below(e):
            ut = m.coherence_set(t)
            if x in ut and ut <= target:
                found = t
                break
        # box holds iff some state works; diamond fails iff some state works
        if found is not None:
            node.witness_state = m.state_name(found)
            node.sets["U_%s" % m.state_name(found)] = srt(m.coherence_set(found))
    elif isinstance(f, (EffortBox, EffortDiamond)):
        want = isinstance(f, EffortBox)
        for t in m.below(e):
            if x in m.coherence_set(t) and (x in ev.truth_set(f.arg, t)) == want:
                node.witness_state = m.state_name(t)
                child(f.arg, x, t)
                break
    return node


_CLAUSES = {
    Atom: "atom", Top: "top", Bottom: "bottom", Not: "not", And: "and", Or: "or",
    Implies: "implies", Iff: "iff", Entails: "E", Knows: "K", Believes: "B",
    Box: "box", Diamond: "diamond", EffortBox: "effort-box", EffortDiamond: "effort-diamond",
}
