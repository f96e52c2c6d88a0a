"""Brute-force reference computations used to cross-check the library.

Everything here enumerates naively; none of it reuses the library's
algorithms beyond model accessors.
"""

from itertools import chain, combinations, product

from evidence_logic.models import RelationalModel
from evidence_logic.translate import relational_truth_set


def powerset(items):
    items = list(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, k)
                                                      for k in range(len(items) + 1))]


def closed_supersets(m, e, v):
    """Every W containing v with I_e(y) inside W for all y in W."""
    return [w for w in powerset(m.worlds)
            if v <= w and all(m.interp(e, y) <= w for y in w)]


def least_closed_superset(m, e, v):
    found = closed_supersets(m, e, frozenset(v))
    least = frozenset(m.worlds)
    for w in found:
        least &= w
    assert least in found
    return least


def _reflexive_relations(worlds):
    off = [(x, y) for x in worlds for y in worlds if x != y]
    for bits in product((0, 1), repeat=len(off)):
        yield {(x, x) for x in worlds} | {p for p, b in zip(off, bits) if b}


def _preorders(worlds):
    for rel in _reflexive_relations(worlds):
        if all((a, d) in rel for a, b in rel for c, d in rel if b == c):
            yield rel


def relational_models(kind, n, atoms, e2=False):
    """All relational models of ``kind`` on n worlds over ``atoms``."""
    worlds = ["w%d" % i for i in range(n)]
    valuations = [dict(zip(atoms, sets))
                  for sets in product(powerset(worlds), repeat=len(atoms))]
    for r_e in _reflexive_relations(worlds):
        for val in valuations:
            if kind == "evidence":
                yield RelationalModel(worlds, kind, r_e, val)
            elif kind == "doxastic":
                for image in powerset(worlds):
                    if not image:
                        continue
                    if e2 and any(b not in image for a, b in r_e if a in image):
                        continue
                    r_b = [(x, y) for x in worlds for y in image]
                    yield RelationalModel(worlds, kind, r_e, val, r_b=r_b)
            else:
                for box in _preorders(worlds):
                    yield RelationalModel(worlds, kind, r_e, val, r_box=box)


def brute_satisfiable(kind, f, max_worlds, atoms, e2=False):
    for n in range(1, max_worlds + 1):
        for m in relational_models(kind, n, atoms, e2):
            if relational_truth_set(m, f):
                return True
    return False
