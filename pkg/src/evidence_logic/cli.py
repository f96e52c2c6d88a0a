"""Command-line front end: ``evlogic <command> ...``.

Exit status: 0 for a true / satisfiable / valid verdict (or success), 1 for
the opposite verdict, 2 for any error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import corpus
from .belief import ladder
from .checker import Evaluator, explain
from .config import load_settings
from .documents import dumps_model, load_model, model_to_dict, save_model
from .errors import EvidenceLogicError, ModelError
from .models import check_e1
from .sampling import OPERATORS_FOR, random_formula
from .search import check_validity, find_model, fuzz_axioms
from .syntax import parse, to_text
from .translate import (doxastic_to_evidence, knowability_to_interaction, relational_to_evidence,
                        subset_space_to_evidence, verify_equivalence)


class _Usage(EvidenceLogicError):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _model(args):
    if getattr(args, "corpus", None):
        return corpus.gallery(args.corpus)
    if getattr(args, "model", None):
        return load_model(args.model)
    raise _Usage("one of --model or --corpus is required")


def _state(m, text):
    if text is not None:
        return m.parse_state(text)
    if getattr(m, "designated", None) is not None:
        return m.designated
    if len(m.states) == 1:
        return m.states[0]
    raise _Usage("model has several evidence states; pass --evidence")


def _id_list(text):
    return [s.strip() for s in text.split(",") if s.strip()]


def _belief(args, m, e):
    if args.belief_file:
        with open(args.belief_file, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, list):
            raise ModelError("belief file must hold a JSON list of worlds")
        return raw
    if args.belief:
        return _id_list(args.belief)
    base = getattr(m, "base", m)
    return base.beliefs.get(e) if hasattr(base, "beliefs") else None


# -- commands ----------------------------------------------------------------

def cmd_check(args) -> int:
    m = _model(args)
    f = parse(args.formula)
    e = _state(m, args.evidence)
    belief = _belief(args, m, e)
    s = m.scenario(args.world, e, belief)
    ev = Evaluator(m, s.belief, strict_e1=args.strict_e1)
    value = s.world in ev.truth_set(f, e)
    payload = {"formula": to_text(f), "world": s.world, "evidence": m.state_name(e),
               "value": value}
    text = "true" if value else "false"
    if s.belief is not None:
        payload["belief"] = m.sort(s.belief)
    if args.trace:
        trace = explain(m, s, f, ev)
        payload["trace"] = trace.to_dict()
        text += "\n" + trace.render()
    _emit(args, payload, text)
    return 0 if value else 1


def _search(args, validity: bool) -> int:
    f = parse(args.formula)
    run = check_validity if validity else find_model
    out = run(args.logic, f, args.max_worlds, workers=args.workers)
    payload = out.to_dict()
    payload["seed"] = args.seed
    text = out.summary()
    if out.witness is not None:
        text += "\n" + dumps_model(out.witness)
        if args.emit_model:
            save_model(out.witness, args.emit_model)
    _emit(args, payload, text)
    return 0 if out.found != validity else 1


def cmd_sat(args) -> int:
    return _search(args, validity=False)


def cmd_valid(args) -> int:
    return _search(args, validity=True)


_TARGET = {"relational": "evidence", "relational-doxastic": "evidence",
           "relational-knowability": "interaction", "subset-space": "evidence"}
_VERIFY_LANGUAGE = {"relational": "EK", "relational-doxastic": "EKB",
                    "relational-knowability": "EKK"}


def cmd_translate(args) -> int:
    if _TARGET.get(args.source) != args.target:
        raise _Usage("cannot translate %s to %s (supported: %s)" % (
            args.source, args.target,
            ", ".join("%s -> %s" % kv for kv in _TARGET.items())))
    with open(args.input, encoding="utf-8") as fh:
        doc = json.load(fh)
    belief = None
    designated = None
    if args.source == "subset-space":
        out = subset_space_to_evidence(doc["worlds"], doc["family"], doc.get("valuation", {}))
        src = None
    else:
        src = load_model(args.input)
        kind = model_to_dict(src)["kind"] if hasattr(src, "kind") else None
        if kind != args.source:
            raise ModelError("input document has kind %r, expected %r" % (kind, args.source),
                             "/kind")
        if args.source == "relational":
            out = relational_to_evidence(src)
        elif args.source == "relational-doxastic":
            out, belief = doxastic_to_evidence(src)
        else:
            out, designated = knowability_to_interaction(src, load_settings().upset_cap)
    if args.output:
        save_model(out, args.output)
    payload = {"from": args.source, "to": args.target, "states": len(out.states)}
    lines = ["translated %s -> %s (%d evidence states)" % (args.source, args.target,
                                                         len(out.states))]
    if designated is not None:
        payload["designated"] = designated
        lines.append("designated state %s" % designated)
    status = 0
    if args.verify is not None and src is not None:
        rng = random.Random("%s:translate" % args.seed)
        atoms = sorted(src.valuation) or ["p"]
        formulas = [random_formula(rng, OPERATORS_FOR[_VERIFY_LANGUAGE[args.source]],
                                   atoms, args.verify) for _ in range(args.samples)]
        rep = verify_equivalence(src, out, formulas, designated or "e", belief)
        payload["verification"] = rep.to_dict()
        if rep.agreed:
            lines.append("equivalence verified, 0 mismatches (%d checks)" % rep.checked)
        else:
            lines.append("equivalence FAILED, %d mismatches" % len(rep.mismatches))
            status = 1
    if not args.output:
        lines.append(dumps_model(out))
    _emit(args, payload, "\n".join(lines))
    return status


def _compress(m, worlds) -> str:
    """Render a world list, collapsing runs of consecutive integer ids."""
    ids = m.sort(worlds)
    if ids and all(w.isdigit() for w in ids):
        nums = [int(w) for w in ids]
        if nums == list(range(nums[0], nums[-1] + 1)) and len(nums) > 2:
            return "{%d..%d}" % (nums[0], nums[-1])
    return "{" + ", ".join(ids) + "}"


def cmd_levels(args) -> int:
    m = _model(args)
    e = _state(m, args.evidence)
    lad = ladder(m, e, _id_list(args.initial), strict=not args.permissive)
    lines = ["V%d = %s" % (k + 1, _compress(m, v)) for k, v in enumerate(lad.levels)]
    lines.append("closure = %s (fixpoint at k* = %d%s)" % (
        _compress(m, lad.closure), lad.fixpoint, "" if lad.nested else ", levels not nested"))
    _emit(args, lad.to_dict(m), "\n".join(lines))
    return 0


def cmd_clock(args) -> int:
    if args.example == 1:
        m = corpus.clock_example1(args.resolution)
    else:
        mus = _id_list(args.mu) if args.mu else corpus.DEFAULT_MU_GRID
        m = corpus.clock_example2(args.resolution, mus)
    if args.out:
        save_model(m, args.out)
        _emit(args, {"example": args.example, "worlds": len(m.worlds), "out": args.out},
              "wrote clock example %d (%d worlds) to %s" % (args.example, len(m.worlds),
                                                            args.out))
    else:
        print(dumps_model(m))
    return 0


def cmd_fuzz(args) -> int:
    rep = fuzz_axioms(args.logic, args.trials, args.seed, workers=args.workers)
    text = "%s: %d trials, %d checks, %d violations" % (
        rep.logic.value, rep.trials, rep.checks, len(rep.violations))
    for v in rep.violations[:5]:
        text += "\n  %s at (%s, %s): %s" % (v["scheme"], v["world"], v["evidence"],
                                            v["instance"])
    _emit(args, rep.to_dict(), text)
    return 0 if rep.passed else 1


def cmd_validate_model(args) -> int:
    m = load_model(args.input)
    payload = {"valid": True, "kind": model_to_dict(m)["kind"], "worlds": len(m.worlds)}
    lines = ["valid %s model: %d worlds" % (payload["kind"], len(m.worlds))]
    if hasattr(m, "states"):
        report = check_e1(m)
        payload["states"] = len(m.states)
        payload["e1"] = report.to_dict(m)
        lines.append("%d evidence states; (E1) %s" % (
            len(m.states), "holds" if report.passed else "fails"))
        for r in report.results:
            if not r.passed:
                e, x, y = r.witness
                lines.append("  %s: %s in I(%s) but not in I(%s)" % (m.state_name(e), y, x, y))
    _emit(args, payload, "\n".join(lines))
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    settings = load_settings()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", default="0", help="seed for every randomized step")

    def model_args(p):
        src = p.add_mutually_exclusive_group()
        src.add_argument("--model", help="model document (JSON)")
        src.add_argument("--corpus", choices=corpus.GALLERY_NAMES, help="built-in model")
        p.add_argument("--evidence", help="evidence state id")

    parser = argparse.ArgumentParser(prog="evlogic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="evaluate a formula at a scenario")
    model_args(p)
    p.add_argument("--formula", required=True)
    p.add_argument("--world", required=True)
    bel = p.add_mutually_exclusive_group()
    bel.add_argument("--belief", help="comma-separated conjecture worlds")
    bel.add_argument("--belief-file")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--strict-e1", action="store_true")
    p.set_defaults(run=cmd_check)

    for name, fn in (("sat", cmd_sat), ("valid", cmd_valid)):
        p = sub.add_parser(name, parents=[common],
                           help="bounded model search" if name == "sat" else
                           "bounded countermodel search")
        p.add_argument("--logic", required=True,
                       choices=("ek", "ekb", "ekb2", "ekk", "s4box"))
        p.add_argument("--formula", required=True)
        p.add_argument("--max-worlds", type=int, default=settings.default_max_worlds)
        p.add_argument("--workers", type=int, default=settings.workers)
        p.add_argument("--emit-model")
        p.set_defaults(run=fn)

    p = sub.add_parser("translate", parents=[common], help="apply a model construction")
    p.add_argument("--from", dest="source", required=True, choices=tuple(_TARGET))
    p.add_argument("--to", dest="target", required=True, choices=("evidence", "interaction"))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output")
    p.add_argument("--verify", type=int, metavar="DEPTH")
    p.add_argument("--samples", type=int, default=50)
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("levels", parents=[common], help="belief ladder from a conjecture")
    model_args(p)
    p.add_argument("--initial", required=True, help="comma-separated worlds of V1")
    p.add_argument("--permissive", action="store_true",
                   help="allow models failing (E1) and report non-nested levels")
    p.set_defaults(run=cmd_levels)

    p = sub.add_parser("clock", parents=[common], help="write a discretized clock model")
    p.add_argument("--example", type=int, choices=(1, 2), required=True)
    p.add_argument("--resolution", type=int, default=60)
    p.add_argument("--mu", help="comma-separated precision values (example 2)")
    p.add_argument("--out")
    p.set_defaults(run=cmd_clock)

    p = sub.add_parser("fuzz", parents=[common], help="random soundness checks")
    p.add_argument("--logic", required=True, choices=("ek", "ekb", "ekb2", "ekk", "s4box"))
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--workers", type=int, default=settings.workers)
    p.set_defaults(run=cmd_fuzz)

    p = sub.add_parser("validate-model", parents=[common], help="load and check a document")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(run=cmd_validate_model)
    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser()
    except EvidenceLogicError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (EvidenceLogicError, OSError, json.JSONDecodeError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
