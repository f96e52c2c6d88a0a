"""Evidence interaction models: combinable evidence and the knowability operators.

Two representations of the evidence semilattice are supported:

* ``generators`` -- the free semilattice over the base model's evidence
  states. A state is a nonempty frozenset of generator ids, combination is
  union, and I_S(x) is the intersection of the generators' interpretations.
* ``explicit`` -- the base model already lists every state, and the family
  of interpretation tables is closed under pointwise intersection. The
  combination of two states is the state whose table is their intersection.
  Translated knowability models use this form.
"""

from __future__ import annotations

from itertools import combinations

from .errors import ModelError
from .models import EvidenceModel, check_e1, make_scenario

__all__ = ["InteractionModel", "meet", "interp_at", "box_holds", "effort_holds",
           "DEFAULT_MAX_GENERATORS"]

DEFAULT_MAX_GENERATORS = 12


class InteractionModel:
    """Evidence interaction model built on an (E1) evidence model ``base``."""

    def __init__(self, base: EvidenceModel, closure: str = "generators",
                 max_generators: int = DEFAULT_MAX_GENERATORS, designated=None,
                 validate_meets: bool = True):
        if closure not in ("generators", "explicit"):
            raise ModelError("unknown closure mode %r" % (closure,), "/closure")
        report = check_e1(base)
        if not report.passed:
            bad = next(r for r in report.results if not r.passed)
            e, x, y = bad.witness
            raise ModelError("evidence state %r violates (E1): %s in I(%s) but not in I(%s)"
                             % (e, y, x, y), "/interpretation/%s" % e)
        self.base = base
        self.closure = closure
        self._gen_order = {g: i for i, g in enumerate(base.evidence)}
        self._interp_cache: dict = {}
        self._coherence: dict = {}
        self._union: dict = {}
        self._below: dict = {}

        if closure == "generators":
            if len(base.evidence) > max_generators:
                raise ModelError("%d generators exceed the cap of %d"
                                 % (len(base.evidence), max_generators), "/evidence")
            gens = base.evidence
            self._states = tuple(frozenset(c) for k in range(1, len(gens) + 1)
                                 for c in combinations(gens, k))
            self._state_set = frozenset(self._states)
        else:
            self._states = tuple(base.evidence)
            self._state_set = frozenset(self._states)
            self._by_table = {}
            for e in self._states:
                table = tuple(base.interp(e, x) for x in base.worlds)
                if table in self._by_table:
                    raise ModelError("states %r and %r have identical interpretations"
                                     % (self._by_table[table], e), "/interpretation/%s" % e)
                self._by_table[table] = e
            self._meet_cache = {}
            if validate_meets:
                for a in self._states:
                    for b in self._states:
                        self.meet(a, b)

        self.designated = None
        if designated is not None:
            self.check_state(designated)
            self.designated = designated

    # -- semilattice ----------------------------------------------------------

    @property
    def worlds(self):
        return self.base.worlds

    @property
    def states(self) -> tuple:
        return self._states

    @property
    def generators(self) -> tuple:
        return self.base.evidence

    @property
    def valuation(self):
        return self.base.valuation

    def check_state(self, s) -> None:
        if s not in self._state_set:
            raise ModelError("foreign evidence state %r" % (s,))

    def check_world(self, x) -> None:
        self.base.check_world(x)

    def meet(self, s, t):
        """The combination s (+) t: the greatest lower bound under parthood."""
        self.check_state(s)
        self.check_state(t)
        if self.closure == "generators":
            return s | t
        m = self._meet_cache.get((s, t))
        if m is None:
            table = tuple(self.base.interp(s, x) & self.base.interp(t, x)
                          for x in self.base.worlds)
            m = self._by_table.get(table)
            if m is None:
                raise ModelError("states %r and %r have no combination in the model"
                                 % (s, t), "/evidence")
            self._meet_cache[s, t] = self._meet_cache[t, s] = m
        return m

    def leq(self, s, t) -> bool:
        """Evidence parthood: s <= t iff s (+) t == s."""
        return self.meet(s, t) == s

    def below(self, s) -> tuple:
        """All states s (+) t, i.e. every state reachable by further evidence."""
        cached = self._below.get(s)
        if cached is None:
            self.check_state(s)
            if self.closure == "generators":
                cached = tuple(t for t in self._states if s <= t)
            else:
                reach = {self.meet(s, t) for t in self._states}
                cached = tuple(t for t in self._states if t in reach)
            self._below[s] = cached
        return cached

    # -- evidence-model protocol ---------------------------------------------

    def _table(self, s) -> dict:
        table = self._interp_cache.get(s)
        if table is None:
            self.check_state(s)
            if self.closure == "generators":
                gens = list(s)
                table = {}
                for x in self.base.worlds:
                    acc = self.base.interp(gens[0], x)
                    for g in gens[1:]:
                        acc = acc & self.base.interp(g, x)
                    table[x] = acc
            else:
                table = dict(self.base.interpretation[s])
            self._interp_cache[s] = table
        return table

    def interp(self, s, x):
        self.check_world(x)
        return self._table(s)[x]

    def coherence_set(self, s):
        cached = self._coherence.get(s)
        if cached is None:
            table = self._table(s)
            cached = frozenset(x for x in self.base.worlds if x in table[x])
            self._coherence[s] = cached
        return cached

    def interp_union(self, s):
        cached = self._union.get(s)
        if cached is None:
            cached = frozenset().union(*self._table(s).values())
            self._union[s] = cached
        return cached

    def atom(self, p):
        return self.base.atom(p)

    def sort(self, worlds):
        return self.base.sort(worlds)

    def state_name(self, s) -> str:
        if self.closure == "generators":
            return "+".join(sorted(s, key=self._gen_order.__getitem__))
        return s

    def parse_state(self, text: str):
        if self.closure == "generators":
            parts = text.split("+")
            for g in parts:
                if g not in self._gen_order:
                    raise ModelError("unknown generator %r" % (g,))
            state = frozenset(parts)
        else:
            state = text
        self.check_state(state)
        return state

    def scenario(self, world, state, belief=None):
        return make_scenario(self, world, state, belief)

    def __repr__(self):
        return "InteractionModel(%s, %d worlds, %d states)" % (
            self.closure, len(self.worlds), len(self._states))


def meet(m: InteractionModel, s1, s2):
    return m.meet(s1, s2)


def interp_at(m: InteractionModel, s, x):
    """I_s(x); for generator states, the intersection over the generators."""
    return m.interp(s, x)


def box_holds(m: InteractionModel, scenario, f, evaluator=None) -> bool:
    """Truth of ``[]f`` at a scenario of ``m``."""
    from .checker import holds
    from .syntax import Box
    return holds(m, scenario, Box(f), evaluator=evaluator)


def effort_holds(m: InteractionModel, scenario, f, evaluator=None) -> bool:
    """Truth of ``[*]f`` at a scenario of ``m``."""
    from .checker import holds
    from .syntax import EffortBox
    return holds(m, scenario, EffortBox(f), evaluator=evaluator)

