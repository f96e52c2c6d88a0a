"""Finite evidence models, scenarios, relational models and condition checks."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from .errors import ModelError, ScenarioError

__all__ = [
    "EvidenceModel", "RelationalModel", "Scenario", "DoxasticScenario",
    "coherence_set", "check_e1", "check_e2", "E1Result", "E1Report", "E2Report",
    "make_scenario",
]

WorldSet = frozenset  # frozenset[str]


def _unique_ids(ids, path, what) -> tuple[str, ...]:
    ids = tuple(ids)
    if not ids:
        raise ModelError("%s must be nonempty" % what, path)
    seen = set()
    for i, x in enumerate(ids):
        if not isinstance(x, str) or not x:
            raise ModelError("%s ids must be nonempty strings, got %r" % (what, x),
                             "%s/%d" % (path, i))
        if x in seen:
            raise ModelError("duplicate %s id %r" % (what, x), "%s/%d" % (path, i))
        seen.add(x)
    return ids


def _world_set(members, known, path) -> WorldSet:
    if isinstance(members, str):
        raise ModelError("expected a list of world ids, got a string", path)
    out = []
    for i, y in enumerate(members):
        if y not in known:
            raise ModelError("unknown world %r" % (y,), "%s/%d" % (path, i))
        out.append(y)
    return frozenset(out)


class EvidenceModel:
    """A finite evidence model: worlds, evidence states, interpretations, valuation.

    ``interpretation[e][x]`` is the set of worlds evidence ``e`` rules in at
    world ``x``; absent entries mean the empty set. ``beliefs`` optionally
    attaches an initial conjecture to some evidence states.

    Instances are immutable. Derived sets are cached on first use.
    """

    def __init__(self, worlds: Iterable[str], evidence: Iterable[str],
                 interpretation: Mapping[str, Mapping[str, Iterable[str]]],
                 valuation: Mapping[str, Iterable[str]],
                 beliefs: Optional[Mapping[str, Iterable[str]]] = None):
        self._worlds = _unique_ids(worlds, "/worlds", "world")
        self._evidence = _unique_ids(evidence, "/evidence", "evidence")
        self._order = {x: i for i, x in enumerate(self._worlds)}
        known_e = set(self._evidence)

        table: dict[str, dict[str, WorldSet]] = {e: {} for e in self._evidence}
        for e, row in interpretation.items():
            if e not in known_e:
                raise ModelError("unknown evidence state %r" % (e,), "/interpretation/%s" % e)
            for x, members in row.items():
                if x not in self._order:
                    raise ModelError("unknown world %r" % (x,), "/interpretation/%s/%s" % (e, x))
                table[e][x] = _world_set(members, self._order, "/interpretation/%s/%s" % (e, x))
        empty: WorldSet = frozenset()
        self._interp = MappingProxyType({
            e: MappingProxyType({x: table[e].get(x, empty) for x in self._worlds})
            for e in self._evidence
        })

        val = {}
        for p, members in valuation.items():
            val[p] = _world_set(members, self._order, "/valuation/%s" % p)
        self._valuation = MappingProxyType(val)

        self._coherence: dict[str, WorldSet] = {}
        self._union: dict[str, WorldSet] = {}

        bel = {}
        for e, members in (beliefs or {}).items():
            path = "/belief/%s" % e
            if e not in known_e:
                raise ModelError("unknown evidence state %r" % (e,), path)
            v = _world_set(members, self._order, path)
            if not v:
                raise ModelError("belief set must be nonempty", path)
            outside = [y for y in self.sort(v) if y not in self.coherence_set(e)]
            if outside:
                raise ModelError("belief world %r does not cohere with evidence %r"
                                 % (outside[0], e), path)
            bel[e] = v
        self._beliefs = MappingProxyType(bel)

    # -- accessors -----------------------------------------------------------

    @property
    def worlds(self) -> tuple[str, ...]:
        return self._worlds

    @property
    def evidence(self) -> tuple[str, ...]:
        return self._evidence

    @property
    def states(self) -> tuple[str, ...]:
        """Evidence states; shared name with interaction models."""
        return self._evidence

    @property
    def valuation(self) -> Mapping[str, WorldSet]:
        return self._valuation

    @property
    def beliefs(self) -> Mapping[str, WorldSet]:
        return self._beliefs

    @property
    def interpretation(self) -> Mapping[str, Mapping[str, WorldSet]]:
        return self._interp

    def check_state(self, e) -> None:
        if e not in self._interp:
            raise ModelError("unknown evidence state %r" % (e,))

    def check_world(self, x) -> None:
        if x not in self._order:
            raise ModelError("unknown world %r" % (x,))

    def interp(self, e: str, x: str) -> WorldSet:
        self.check_state(e)
        self.check_world(x)
        return self._interp[e][x]

    def atom(self, p: str) -> WorldSet:
        return self._valuation.get(p, frozenset())

    def coherence_set(self, e: str) -> WorldSet:
        """U_e: the worlds x with x in I_e(x)."""
        cached = self._coherence.get(e)
        if cached is None:
            self.check_state(e)
            row = self._interp[e]
            cached = frozenset(x for x in self._worlds if x in row[x])
            self._coherence[e] = cached
        return cached

    def interp_union(self, e: str) -> WorldSet:
        """The union of I_e(y) over all worlds y."""
        cached = self._union.get(e)
        if cached is None:
            self.check_state(e)
            cached = frozenset().union(*self._interp[e].values())
            self._union[e] = cached
        return cached

    def sort(self, worlds: Iterable[str]) -> list[str]:
        """Worlds in model order."""
        return sorted(worlds, key=self._order.__getitem__)

    def state_name(self, e) -> str:
        return e

    def parse_state(self, text: str) -> str:
        self.check_state(text)
        return text

    def scenario(self, world: str, evidence: str, belief=None):
        return make_scenario(self, world, evidence, belief)

    def __eq__(self, other):
        if not isinstance(other, EvidenceModel):
            return NotImplemented
        return (set(self._worlds) == set(other._worlds)
                and set(self._evidence) == set(other._evidence)
                and dict(self._interp) == dict(other._interp)
                and {p: s for p, s in self._valuation.items()}
                == {p: s for p, s in other._valuation.items()}
                and dict(self._beliefs) == dict(other._beliefs))

    __hash__ = None

    def __repr__(self):
        return "EvidenceModel(%d worlds, evidence=%r)" % (len(self._worlds), list(self._evidence))


@dataclass(frozen=True)
class Scenario:
    """A coherent world/evidence pair."""
    world: str
    evidence: object

    @property
    def belief(self):
        return None


@dataclass(frozen=True)
class DoxasticScenario:
    """A scenario plus a nonempty conjecture ``belief`` inside U_evidence."""
    world: str
    evidence: object
    belief: frozenset


def make_scenario(model, world, evidence, belief=None):
    """Validate and build a (doxastic) scenario of ``model``."""
    model.check_state(evidence)
    model.check_world(world)
    if world not in model.interp(evidence, world):
        raise ScenarioError("(%s, %s) is not an evidence scenario: %s is not in I_%s(%s)"
                            % (world, model.state_name(evidence), world,
                               model.state_name(evidence), world))
    if belief is None:
        return Scenario(world, evidence)
    belief = frozenset(belief)
    if not belief:
        raise ScenarioError("belief set must be nonempty")
    outside = belief - model.coherence_set(evidence)
    if outside:
        unknown = outside - set(model.worlds)
        y = sorted(unknown)[0] if unknown else model.sort(outside)[0]
        raise ScenarioError("belief world %r is not in U_%s" % (y, model.state_name(evidence)))
    return DoxasticScenario(world, evidence, belief)


def coherence_set(m, e) -> WorldSet:
    return m.coherence_set(e)


# -- conditions --------------------------------------------------------------

@dataclass(frozen=True)
class E1Result:
    evidence: object
    passed: bool
    witness: Optional[tuple]  # (e, x, y): y in I_e(x) but y not in I_e(y)
    union_equals_coherence: bool


@dataclass(frozen=True)
class E1Report:
    results: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def for_state(self, e) -> E1Result:
        for r in self.results:
            if r.evidence == e:
                return r
        raise KeyError(e)

    def to_dict(self, model=None) -> dict:
        name = model.state_name if model is not None else str
        return {
            "passed": self.passed,
            "states": [
                {"evidence": name(r.evidence), "passed": r.passed,
                 "witness": None if r.witness is None
                 else [name(r.witness[0]), r.witness[1], r.witness[2]],
                 "union_equals_coherence": r.union_equals_coherence}
                for r in self.results
            ],
        }


def check_e1(m, states=None) -> E1Report:
    """Check y in I_e(x) => y in I_e(y) for every evidence state.

    Each result also records whether the union of all interpretations equals
    U_e; the two tests agree exactly when the model is well formed.
    """
    results = []
    for e in (m.states if states is None else states):
        witness = None
        for x in m.worlds:
            for y in m.sort(m.interp(e, x)):
                if y not in m.interp(e, y):
                    witness = (e, x, y)
                    break
            if witness:
                break
        union_ok = m.interp_union(e) == m.coherence_set(e)
        results.append(E1Result(e, witness is None, witness, union_ok))
    return E1Report(tuple(results))


@dataclass(frozen=True)
class E2Report:
    evidence: object
    passed: bool
    witness: Optional[tuple]  # (y, z): y in V, z in I_e(y), z not in V

    def to_dict(self) -> dict:
        return {"passed": self.passed,
                "witness": None if self.witness is None else list(self.witness)}


def check_e2(m, e, v) -> E2Report:
    """Check that ``v`` is closed under I_e: y in v implies I_e(y) within v."""
    m.check_state(e)
    v = frozenset(v)
    for y in m.sort(v):
        outside = m.interp(e, y) - v
        if outside:
            return E2Report(e, False, (y, m.sort(outside)[0]))
    return E2Report(e, True, None)


# -- relational models -------------------------------------------------------

RELATIONAL_KINDS = ("evidence", "doxastic", "knowability")


def _relation(pairs, known, path) -> frozenset:
    out = set()
    for i, pair in enumerate(pairs):
        if isinstance(pair, str) or len(pair) != 2:
            raise ModelError("relation entries must be [id, id] pairs", "%s/%d" % (path, i))
        x, y = pair
        for j, z in enumerate((x, y)):
            if z not in known:
                raise ModelError("unknown world %r" % (z,), "%s/%d/%d" % (path, i, j))
        out.add((x, y))
    return frozenset(out)


class RelationalModel:
    """Kripke-style model with E, B and box accessibility relations.

    ``kind`` selects the class conditions: ``evidence`` (reflexive R_E),
    ``doxastic`` (adds R_B with one nonempty image shared by all worlds) and
    ``knowability`` (adds a reflexive, transitive R_Box).
    """

    def __init__(self, worlds, kind, r_e, valuation, r_b=None, r_box=None):
        if kind not in RELATIONAL_KINDS:
            raise ModelError("unknown relational class %r" % (kind,), "/kind")
        self.kind = kind
        self.worlds = _unique_ids(worlds, "/worlds", "world")
        self._order = {x: i for i, x in enumerate(self.worlds)}
        self.r_e = _relation(r_e, self._order, "/R_E")
        self.valuation = MappingProxyType(
            {p: _world_set(s, self._order, "/valuation/%s" % p) for p, s in valuation.items()})
        self.r_b = _relation(r_b, self._order, "/R_B") if r_b is not None else None
        self.r_box = _relation(r_box, self._order, "/R_Box") if r_box is not None else None
        self._images = {}

        for x in self.worlds:
            if (x, x) not in self.r_e:
                raise ModelError("R_E is not reflexive at %r" % (x,), "/R_E")
        if kind == "doxastic":
            if self.r_b is None:
                raise ModelError("doxastic models need R_B", "/R_B")
            first = self.image("b", self.worlds[0])
            if not first:
                raise ModelError("R_B image of %r is empty" % (self.worlds[0],), "/R_B")
            for x in self.worlds:
                if self.image("b", x) != first:
                    raise ModelError("R_B image of %r differs from that of %r"
                                     % (x, self.worlds[0]), "/R_B")
        elif self.r_b is not None:
            raise ModelError("R_B is only allowed in doxastic models", "/R_B")
        if kind == "knowability":
            if self.r_box is None:
                raise ModelError("knowability models need R_Box", "/R_Box")
            for x in self.worlds:
                if (x, x) not in self.r_box:
                    raise ModelError("R_Box is not reflexive at %r" % (x,), "/R_Box")
            for x, y in sorted(self.r_box):
                for z in self.sort(self.image("box", y)):
                    if (x, z) not in self.r_box:
                        raise ModelError("R_Box is not transitive: %s->%s->%s" % (x, y, z),
                                         "/R_Box")
        elif self.r_box is not None:
            raise ModelError("R_Box is only allowed in knowability models", "/R_Box")

    def image(self, which: str, x: str) -> frozenset:
        """Successors of ``x`` under R_E (``"e"``), R_B (``"b"``) or R_Box (``"box"``)."""
        key = (which, x)
        cached = self._images.get(key)
        if cached is None:
            rel = {"e": self.r_e, "b": self.r_b, "box": self.r_box}[which]
            cached = frozenset(y for (z, y) in rel if z == x) if rel is not None else frozenset()
            self._images[key] = cached
        return cached

    def atom(self, p: str) -> frozenset:
        return self.valuation.get(p, frozenset())

    def sort(self, worlds) -> list:
        return sorted(worlds, key=self._order.__getitem__)

    @property
    def belief_image(self) -> frozenset:
        """The common R_B image (doxastic models only)."""
        return self.image("b", self.worlds[0])

    def __eq__(self, other):
        if not isinstance(other, RelationalModel):
            return NotImplemented
        return (self.kind == other.kind and set(self.worlds) == set(other.worlds)
                and self.r_e == other.r_e and self.r_b == other.r_b
                and self.r_box == other.r_box
                and dict(self.valuation) == dict(other.valuation))

    __hash__ = None

    def __repr__(self):
        return "RelationalModel(%s, %d worlds)" % (self.kind, len(self.worlds))
