"""Bounded model search in the relational classes, and axiom fuzzing.

The search is exact for each world count. Worlds are bitmask positions;
world 0 is where the formula must hold. For a fixed valuation, the search
walks the subformulas children-first and, at each modal subformula, guesses
the set of worlds where it is true. A guess is kept only if some relation
of the class realizes all guesses so far. For each operator the largest
such relation is determined by the guesses, which makes the check local:

* E: R_E(x) is the intersection of the argument sets of the E-formulas
  guessed true at x. Every E-formula guessed false at x must then fail.
* B: R_B is the intersection of the argument sets of the true B-formulas.
* box: R(x) is the intersection of the guessed sets of the box-formulas
  true at x. This is a preorder, and any preorder realizing the guesses is
  contained in it.
* K: the universal modality leaves nothing to guess.

Worlds 1..n-1 are interchangeable, so their label vectors are required to
be lexicographically nondecreasing (symmetry breaking).
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import partial
from itertools import combinations_with_replacement, product
from typing import Optional

from .checker import Evaluator
from .config import load_settings
from .documents import model_to_dict
from .errors import BoundError, LanguageError
from .models import RelationalModel
from .sampling import OPERATORS_FOR, SizeProfile, map_trials, random_formula, random_model, \
    trial_rng
from .syntax import (And, Atom, Believes, Bottom, Box, Diamond, EffortBox, EffortDiamond,
                     Entails, Formula, Iff, Implies, Knows, Not, Or, Top, atoms, expand_duals,
                     operators, parse, subformulas, substitute, to_text)
from .translate import relational_truth_set, translate

__all__ = ["LogicId", "SearchOutcome", "find_model", "check_validity", "fuzz_axioms",
           "FuzzReport", "AXIOM_SCHEMES", "SCHEMES_FOR", "parse_logic"]


class LogicId(str, Enum):
    EK = "EK"
    EKB = "EKB"
    EKB_E2 = "EKB_E2"
    EKK = "EKK"
    S4_BOX = "S4_BOX"


_ALIASES = {"ek": LogicId.EK, "ekb": LogicId.EKB, "ekb2": LogicId.EKB_E2,
            "ekb_e2": LogicId.EKB_E2, "ekk": LogicId.EKK, "s4box": LogicId.S4_BOX,
            "s4_box": LogicId.S4_BOX}


def parse_logic(name) -> LogicId:
    if isinstance(name, LogicId):
        return name
    try:
        return _ALIASES[str(name).lower()]
    except KeyError:
        raise LanguageError("unknown logic %r (known: %s)" % (name, ", ".join(sorted(_ALIASES))))


_LANGUAGE = {
    LogicId.EK: frozenset({Knows, Entails}),
    LogicId.EKB: frozenset({Knows, Entails, Believes}),
    LogicId.EKB_E2: frozenset({Knows, Entails, Believes}),
    LogicId.EKK: frozenset({Knows, Entails, Box, Diamond}),
    LogicId.S4_BOX: frozenset({Box, Diamond}),
}

_RELATIONAL_KIND = {
    LogicId.EK: "evidence", LogicId.EKB: "doxastic", LogicId.EKB_E2: "doxastic",
    LogicId.EKK: "knowability", LogicId.S4_BOX: "knowability",
}


def _check_language(logic: LogicId, f: Formula) -> None:
    extra = operators(f) - _LANGUAGE[logic]
    if extra:
        names = ", ".join(sorted(cls.symbol for cls in extra))
        raise LanguageError("operators %s are outside the language of %s" % (names, logic.value))


# -- search core -------------------------------------------------------------

_OPS = {Atom: 0, Top: 1, Bottom: 2, Not: 3, And: 4, Or: 5, Implies: 6, Iff: 7,
        Knows: 8, Entails: 9, Believes: 10, Box: 11}
_K, _E, _B, _BOX = 8, 9, 10, 11


class _Problem:
    """Compiled formula: nodes in children-first order with child indices."""

    def __init__(self, logic: LogicId, f: Formula, n: int):
        self.logic = logic
        self.n = n
        self.full = (1 << n) - 1
        g = expand_duals(f)
        self.atoms = sorted(atoms(g))
        nodes = subformulas(g)
        index = {h: i for i, h in enumerate(nodes)}
        self.code = []
        for h in nodes:
            op = _OPS[type(h)]
            if op == 0:
                self.code.append((op, self.atoms.index(h.name), 0))
            else:
                kids = [index[c] for c in h.children()]
                self.code.append((op, kids[0] if kids else 0, kids[1] if len(kids) > 1 else 0))
        self.root = len(nodes) - 1
        self.e2 = logic is LogicId.EKB_E2


@dataclass
class _Found:
    valuation: tuple
    rows_e: list
    belief: int
    rows_box: list


class _Walker:
    """Depth-first labelling for one valuation."""

    def __init__(self, prob: _Problem, valuation: tuple):
        self.p = prob
        self.valuation = valuation
        n = prob.n
        self.atom_masks = [sum(1 << x for x in range(n) if valuation[x] >> a & 1)
                           for a in range(len(prob.atoms))]
        self.vals = [0] * len(prob.code)
        self.examined = 0
        self.found: Optional[_Found] = None

    def run(self) -> bool:
        n = self.p.n
        tied = [self.valuation[i] == self.valuation[i + 1] for i in range(1, n - 1)]
        full = self.p.full
        return self._step(0, tied, [full] * n, [], full, [], [full] * n, [])

    def _symmetric(self, label, tied):
        new = list(tied)
        for k, t in enumerate(tied):
            if t:
                a = label >> (k + 1) & 1
                b = label >> (k + 2) & 1
                if a > b:
                    return None
                if a < b:
                    new[k] = False
        return new

    def _step(self, i, tied, rows_e, false_e, tb, false_b, rows_box, false_box) -> bool:
        p = self.p
        if i == len(p.code):
            return self._leaf(rows_e, false_e, tb, false_b, rows_box)
        op, a, b = p.code[i]
        vals = self.vals
        full = p.full
        if op <= 7:
            if op == 0:
                vals[i] = self.atom_masks[a]
            elif op == 1:
                vals[i] = full
            elif op == 2:
                vals[i] = 0
            elif op == 3:
                vals[i] = full & ~vals[a]
            elif op == 4:
                vals[i] = vals[a] & vals[b]
            elif op == 5:
                vals[i] = vals[a] | vals[b]
            elif op == 6:
                vals[i] = (full & ~vals[a]) | vals[b]
            else:
                vals[i] = full & ~(vals[a] ^ vals[b])
            return self._step(i + 1, tied, rows_e, false_e, tb, false_b, rows_box, false_box)
        arg = vals[a]
        if op == _K:
            vals[i] = full if arg == full else 0
            return self._step(i + 1, tied, rows_e, false_e, tb, false_b, rows_box, false_box)
        if op == _B:
            for label in (full, 0):
                if label:
                    ntb = tb & arg
                    if not ntb or any(ntb & ~q == 0 for q in false_b):
                        continue
                    nfb = false_b
                else:
                    if tb & ~arg == 0:
                        continue
                    ntb, nfb = tb, false_b + [arg]
                vals[i] = label
                if self._step(i + 1, tied, rows_e, false_e, ntb, nfb, rows_box, false_box):
                    return True
            return False
        # E or box: try every subset of the argument set, largest first
        sub = arg
        while True:
            ntied = self._symmetric(sub, tied)
            if ntied is not None:
                if op == _E:
                    ok, nrows, nfalse = self._extend(sub, arg, arg, rows_e, false_e)
                    if ok:
                        vals[i] = sub
                        if self._step(i + 1, ntied, nrows, nfalse, tb, false_b,
                                      rows_box, false_box):
                            return True
                else:
                    ok, nrows, nfalse = self._extend(sub, sub, arg, rows_box, false_box)
                    if ok:
                        vals[i] = sub
                        if self._step(i + 1, ntied, rows_e, false_e, tb, false_b,
                                      nrows, nfalse):
                            return True
            if sub == 0:
                return False
            sub = (sub - 1) & arg

    def _extend(self, label, narrow, target, rows, false):
        """Add one guess: rows shrink by ``narrow`` where it is true, and every
        world where it is false must keep a row reaching outside ``target``."""
        n = self.p.n
        nrows = list(rows)
        for x in range(n):
            if label >> x & 1:
                nrows[x] &= narrow
        nfalse = list(false)
        nfalse.append((label, target))
        for lab, target in nfalse:
            for x in range(n):
                if not lab >> x & 1 and nrows[x] & ~target == 0:
                    return False, None, None
        return True, nrows, nfalse

    def _leaf(self, rows_e, false_e, tb, false_b, rows_box) -> bool:
        self.examined += 1
        if not self.vals[self.p.root] & 1:
            return False
        belief = tb
        if self.p.e2:
            belief = self._e2_belief(rows_e, false_e, tb, false_b)
            if belief is None:
                return False
            rows_e = [r & belief if belief >> y & 1 else r for y, r in enumerate(rows_e)]
        self.found = _Found(self.valuation, rows_e, belief, rows_box)
        return True

    def _e2_belief(self, rows_e, false_e, tb, false_b):
        """Largest-first V inside tb that is closed under the (trimmed) rows."""
        v = tb
        while v:
            if all(v & ~q for q in false_b) and all(
                    lab >> y & 1 or (rows_e[y] & v) & ~target
                    for y in range(self.p.n) if v >> y & 1
                    for lab, target in false_e):
                return v
            v = (v - 1) & tb
        return None


def _valuations(n: int, n_atoms: int) -> list:
    """World 0 free; worlds 1..n-1 nondecreasing."""
    values = range(1 << n_atoms)
    rest = list(combinations_with_replacement(values, n - 1))
    return [(v0,) + tail for v0, tail in product(values, rest)]


def _search_chunk(logic_value: str, text: str, n: int, valuations):
    """Returns (examined, found, examined_up_to_find) for consecutive valuations."""
    prob = _Problem(LogicId(logic_value), parse(text), n)
    examined = 0
    for valuation in valuations:
        w = _Walker(prob, valuation)
        hit = w.run()
        examined += w.examined
        if hit:
            return examined, w.found, examined
    return examined, None, examined


def _witness(prob: _Problem, found: _Found) -> RelationalModel:
    n = prob.n
    names = ["w%d" % i for i in range(n)]

    def pairs(rows):
        return [(names[x], names[y]) for x in range(n) for y in range(n) if rows[x] >> y & 1]

    valuation = {a: [names[x] for x in range(n) if found.valuation[x] >> k & 1]
                 for k, a in enumerate(prob.atoms)}
    kind = _RELATIONAL_KIND[prob.logic]
    if prob.logic is LogicId.S4_BOX:
        r_e = [(w, w) for w in names]
    else:
        r_e = pairs(found.rows_e)
    if kind == "doxastic":
        r_b = [(names[x], names[y]) for x in range(n) for y in range(n)
               if found.belief >> y & 1]
        return RelationalModel(names, kind, r_e, valuation, r_b=r_b)
    if kind == "knowability":
        return RelationalModel(names, kind, r_e, valuation, r_box=pairs(found.rows_box))
    return RelationalModel(names, kind, r_e, valuation)


def _verify(witness: RelationalModel, f: Formula, world: str) -> None:
    if world not in relational_truth_set(witness, f):
        raise RuntimeError("search produced a witness that fails relationally")
    t = translate(witness)
    if world not in Evaluator(t.model, t.belief).truth_set(f, t.designated):
        raise RuntimeError("witness does not transfer to the evidence model")


@dataclass
class SearchOutcome:
    logic: LogicId
    formula: str
    bound: int
    verdict: str  # satisfiable | no-model-up-to | countermodel | valid-up-to
    witness: Optional[RelationalModel] = None
    world: Optional[str] = None
    examined: int = 0
    elapsed: float = 0.0

    @property
    def found(self) -> bool:
        return self.witness is not None

    def summary(self) -> str:
        if self.witness is None:
            return "%s(%d)" % (self.verdict, self.bound)
        return "%s (%d worlds, at %s)" % (self.verdict, len(self.witness.worlds), self.world)

    def to_dict(self) -> dict:
        """Structured report; timing is left out so reports are reproducible."""
        d = {"logic": self.logic.value, "formula": self.formula, "bound": self.bound,
             "verdict": self.verdict, "examined": self.examined}
        if self.witness is not None:
            d["world"] = self.world
            d["witness"] = model_to_dict(self.witness)
        return d


def _bound(max_worlds) -> int:
    settings = load_settings()
    if max_worlds is None:
        max_worlds = settings.default_max_worlds
    if not isinstance(max_worlds, int) or not 1 <= max_worlds <= settings.max_worlds_cap:
        raise BoundError("max_worlds must be between 1 and %d, got %r"
                         % (settings.max_worlds_cap, max_worlds))
    return max_worlds


def find_model(logic, f: Formula, max_worlds: int = None, workers: int = 1) -> SearchOutcome:
    """Smallest relational model of the logic's class satisfying ``f`` at some world.

    World counts are tried in increasing order; within a count the first
    witness in enumeration order is returned whatever ``workers`` is.
    """
    logic = parse_logic(logic)
    for op in (EffortBox, EffortDiamond):
        if op in operators(f):
            raise LanguageError("the effort operator has no relational search class")
    _check_language(logic, f)
    bound = _bound(max_worlds)
    start = time.perf_counter()
    text = to_text(f)
    examined = 0
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for n in range(1, bound + 1):
            prob = _Problem(logic, f, n)
            vals = _valuations(n, len(prob.atoms))
            if pool is None:
                results = [_search_chunk(logic.value, text, n, vals)]
            else:
                size = -(-len(vals) // workers)
                chunks = [vals[k:k + size] for k in range(0, len(vals), size)]
                results = list(pool.map(partial(_search_chunk, logic.value, text, n), chunks))
            for count, found, upto in results:
                if found is not None:
                    examined += upto
                    witness = _witness(prob, found)
                    _verify(witness, f, "w0")
                    return SearchOutcome(logic, text, bound, "satisfiable", witness, "w0",
                                         examined, time.perf_counter() - start)
                examined += count
    finally:
        if pool is not None:
            pool.shutdown()
    return SearchOutcome(logic, text, bound, "no-model-up-to", examined=examined,
                         elapsed=time.perf_counter() - start)


def check_validity(logic, f: Formula, max_worlds: int = None, workers: int = 1) -> SearchOutcome:
    """Search for a countermodel to ``f``: a model of its negation."""
    out = find_model(logic, Not(f), max_worlds, workers)
    out.formula = to_text(f)
    out.verdict = "countermodel" if out.witness is not None else "valid-up-to"
    return out


# -- axiom fuzzing -----------------------------------------------------------

AXIOM_SCHEMES = {
    "K_K": "K(phi -> psi) -> K phi -> K psi",
    "T_K": "K phi -> phi",
    "4_K": "K phi -> K K phi",
    "5_K": "~K phi -> K ~K phi",
    "K_E": "E(phi -> psi) -> E phi -> E psi",
    "T_E": "E phi -> phi",
    "KE": "K phi -> E phi",
    "K_B": "B(phi -> psi) -> B phi -> B psi",
    "D_B": "B phi -> ~B ~phi",
    "sPI": "B phi -> K B phi",
    "KB": "K phi -> B phi",
    "sNI": "~B phi -> K ~B phi",
    "BE": "B phi -> B E phi",
    "K_Box": "[](phi -> psi) -> []phi -> []psi",
    "T_Box": "[]phi -> phi",
    "4_Box": "[]phi -> [][]phi",
    "K_Box_K": "K phi -> []phi",
}

_EK = ("K_K", "T_K", "4_K", "5_K", "K_E", "T_E", "KE")
_EKB = _EK + ("K_B", "D_B", "sPI", "KB", "sNI")
_S4 = ("K_Box", "T_Box", "4_Box")
SCHEMES_FOR = {
    LogicId.EK: _EK,
    LogicId.EKB: _EKB,
    LogicId.EKB_E2: _EKB + ("BE",),
    LogicId.EKK: _EK + _S4 + ("K_Box_K",),
    LogicId.S4_BOX: _S4,
}
_FUZZ_CLASS = {
    LogicId.EK: "evidence", LogicId.EKB: "doxastic", LogicId.EKB_E2: "doxastic-e2",
    LogicId.EKK: "interaction", LogicId.S4_BOX: "interaction",
}
_FUZZ_OPS = {
    LogicId.EK: OPERATORS_FOR["EK"], LogicId.EKB: OPERATORS_FOR["EKB"],
    LogicId.EKB_E2: OPERATORS_FOR["EKB"], LogicId.EKK: OPERATORS_FOR["EKK"],
    LogicId.S4_BOX: OPERATORS_FOR["BOX"],
}


@dataclass
class FuzzReport:
    logic: LogicId
    trials: int
    seed: object
    checks: int = 0
    violations: list = field(default_factory=list)
    by_scheme: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"logic": self.logic.value, "trials": self.trials, "seed": self.seed,
                "checks": self.checks, "violations": len(self.violations),
                "by_scheme": self.by_scheme, "details": self.violations}


def _fuzz_trial(logic_value, seed, profile, evaluator_cls, depth, trial):
    logic = LogicId(logic_value)
    rng = trial_rng(seed, trial)
    model = random_model(_FUZZ_CLASS[logic], profile, rng)
    names = profile.atom_names()
    ops = _FUZZ_OPS[logic]
    doxastic = Believes in _LANGUAGE[logic]
    evaluators = {}
    for e in model.states:
        v = model.beliefs.get(e) if doxastic else None
        if doxastic and v is None:
            continue  # no doxastic scenarios at this state
        evaluators[e] = evaluator_cls(model, v)
    checks, found = 0, []
    for name in SCHEMES_FOR[logic]:
        inst = substitute(parse(AXIOM_SCHEMES[name]),
                          {"phi": random_formula(rng, ops, names, depth),
                           "psi": random_formula(rng, ops, names, depth)})
        for e, ev in evaluators.items():
            checks += 1
            u = model.coherence_set(e)
            bad = u - ev.truth_set(inst, e)
            if bad:
                found.append({
                    "trial": trial, "scheme": name, "instance": to_text(inst),
                    "world": model.sort(bad)[0], "evidence": model.state_name(e),
                    "belief": model.sort(ev.belief) if ev.belief is not None else None,
                    "model": model_to_dict(model),
                })
    return checks, found


def fuzz_axioms(logic, trials: int, seed=0, profile: SizeProfile = None,
                evaluator_cls=Evaluator, workers: int = 1, depth: int = 3) -> FuzzReport:
    """Evaluate random instances of every axiom scheme of ``logic`` on random models.

    Any scenario where an instance is false is a violation; sound schemes
    give none.
    """
    logic = parse_logic(logic)
    if trials < 1:
        raise BoundError("trials must be at least 1")
    if profile is None:
        profile = SizeProfile(max_evidence=3 if _FUZZ_CLASS[logic] == "interaction" else 2)
    fn = partial(_fuzz_trial, logic.value, seed, profile, evaluator_cls, depth)
    report = FuzzReport(logic, trials, seed, by_scheme={s: 0 for s in SCHEMES_FOR[logic]})
    for checks, found in map_trials(fn, trials, workers):
        report.checks += checks
        for v in found:
            report.by_scheme[v["scheme"]] += 1
        report.violations.extend(found)
    return report
