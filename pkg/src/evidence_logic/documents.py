"""JSON model documents: loading with full validation, and saving.

Document kinds: ``evidence``, ``interaction`` (generators plus optional
``closure``/``designated``), ``relational``, ``relational-doxastic`` and
``relational-knowability``. Sets are written in model world order.
"""

from __future__ import annotations

import json

from .errors import ModelError
from .interaction import InteractionModel
from .models import EvidenceModel, RelationalModel

__all__ = ["load_model", "loads_model", "model_from_dict", "model_to_dict", "save_model",
           "dumps_model", "DOCUMENT_KINDS"]

DOCUMENT_KINDS = ("evidence", "interaction", "relational", "relational-doxastic",
                  "relational-knowability")
_RELATIONAL_CLASS = {"relational": "evidence", "relational-doxastic": "doxastic",
                     "relational-knowability": "knowability"}
_DOCUMENT_KIND = {v: k for k, v in _RELATIONAL_CLASS.items()}


def _field(doc, name, kind, required=True, default=None):
    if name not in doc:
        if required:
            raise ModelError("missing field %r" % name, "/%s" % name)
        return default
    value = doc[name]
    if not isinstance(value, kind):
        raise ModelError("field %r must be a %s" % (name, kind.__name__), "/%s" % name)
    return value


def _pairs(doc, name):
    value = _field(doc, name, list, required=False)
    if value is None:
        return None
    for i, pair in enumerate(value):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ModelError("relation entries must be [source, target] pairs",
                             "/%s/%d" % (name, i))
    return [tuple(p) for p in value]


def _beliefs(doc, evidence):
    raw = doc.get("belief")
    if raw is None:
        return None
    if isinstance(raw, list):
        return {e: raw for e in evidence}
    if isinstance(raw, dict):
        return raw
    raise ModelError("belief must be a list of worlds or a map from evidence states",
                     "/belief")


def model_from_dict(doc: dict):
    """Build and validate a model from a parsed document."""
    if not isinstance(doc, dict):
        raise ModelError("model document must be a JSON object")
    kind = _field(doc, "kind", str)
    if kind not in DOCUMENT_KINDS:
        raise ModelError("unknown kind %r (known: %s)" % (kind, ", ".join(DOCUMENT_KINDS)),
                         "/kind")
    worlds = _field(doc, "worlds", list)
    valuation = _field(doc, "valuation", dict, required=False, default={})
    if kind in _RELATIONAL_CLASS:
        r_e = _pairs(doc, "R_E")
        if r_e is None:
            raise ModelError("missing field 'R_E'", "/R_E")
        return RelationalModel(worlds, _RELATIONAL_CLASS[kind], r_e, valuation,
                               r_b=_pairs(doc, "R_B"), r_box=_pairs(doc, "R_Box"))
    evidence = _field(doc, "evidence", list)
    interpretation = _field(doc, "interpretation", dict, required=False, default={})
    for e, row in interpretation.items():
        if not isinstance(row, dict):
            raise ModelError("interpretation rows must map worlds to lists",
                             "/interpretation/%s" % e)
    base = EvidenceModel(worlds, evidence, interpretation, valuation,
                         _beliefs(doc, evidence) if kind == "evidence" else None)
    if kind == "evidence":
        return base
    closure = _field(doc, "closure", str, required=False, default="generators")
    designated = doc.get("designated")
    model = InteractionModel(base, closure=closure)
    if designated is not None:
        model.designated = model.parse_state(str(designated))
    return model


def loads_model(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError("not valid JSON: %s (line %d, column %d)"
                         % (exc.msg, exc.lineno, exc.colno)) from None
    return model_from_dict(doc)


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return loads_model(fh.read())


def model_to_dict(m) -> dict:
    """Document for ``m``; empty interpretation entries are omitted."""
    if isinstance(m, RelationalModel):
        doc = {"kind": _DOCUMENT_KIND[m.kind], "worlds": list(m.worlds),
               "valuation": {p: m.sort(s) for p, s in sorted(m.valuation.items())},
               "R_E": _relation_list(m, m.r_e)}
        if m.r_b is not None:
            doc["R_B"] = _relation_list(m, m.r_b)
        if m.r_box is not None:
            doc["R_Box"] = _relation_list(m, m.r_box)
        return doc
    interaction = isinstance(m, InteractionModel)
    base = m.base if interaction else m
    doc = {"kind": "interaction" if interaction else "evidence",
           "worlds": list(base.worlds), "evidence": list(base.evidence),
           "interpretation": {
               e: {x: base.sort(base.interp(e, x)) for x in base.worlds if base.interp(e, x)}
               for e in base.evidence},
           "valuation": {p: base.sort(s) for p, s in sorted(base.valuation.items())}}
    if base.beliefs:
        doc["belief"] = {e: base.sort(v) for e, v in base.beliefs.items()}
    if interaction:
        doc["closure"] = m.closure
        if m.designated is not None:
            doc["designated"] = m.state_name(m.designated)
    return doc


def _relation_list(m, rel) -> list:
    order = {x: i for i, x in enumerate(m.worlds)}
    return [list(p) for p in sorted(rel, key=lambda p: (order[p[0]], order[p[1]]))]


def dumps_model(m) -> str:
    return json.dumps(model_to_dict(m), indent=2)


def save_model(m, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_model(m))
        fh.write("\n")
