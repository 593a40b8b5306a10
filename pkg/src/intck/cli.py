"""Command-line front end.

Exit codes: 0 for success or acceptance, 1 when a check fails (or a search
finds nothing), 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fosem, models, translate
from .calculus import KernelError, ScriptError, check, dumps, load, port_proof, verify_corpus
from .calculus.kernel import parse_dialect
from .syntax import ParseError, fmt, fo_fmt, parse

OK, FAIL, MALFORMED = 0, 1, 2


class Malformed(Exception):
    pass


def _emit(args, text_lines: list[str], payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _formula(text: str, dialect: str = "cond"):
    try:
        return parse(text, dialect)
    except ParseError as e:
        raise Malformed(f"parse error: {e}") from None


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise Malformed(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise Malformed(f"{path}: invalid JSON: {e}") from None


def _model(path: str) -> models.Model:
    try:
        return models.model_from_json(_read_json(path))
    except models.ModelError as e:
        raise Malformed(f"{path}: {e}") from None


def _script(path: str):
    try:
        return load(path)
    except OSError as e:
        raise Malformed(f"cannot read {path}: {e.strerror}") from None
    except (ScriptError, KernelError) as e:
        raise Malformed(f"{path}: {e}") from None


# -- subcommands ---------------------------------------------------------------


def cmd_fmt(args) -> int:
    f = _formula(args.formula, args.dialect)
    out = fmt(f)
    _emit(args, [out], {"formula": out})
    return OK


def cmd_eval(args) -> int:
    m = _model(args.model)
    f = _formula(args.formula)
    try:
        value = models.evaluate(m, args.mode, args.world, f)
    except (models.ModelError, models.EvalError) as e:
        raise Malformed(str(e)) from None
    _emit(args, ["true" if value else "false"], {"world": args.world, "mode": args.mode, "value": value})
    return OK


def cmd_validate_model(args) -> int:
    m = _model(args.file)
    vs = models.validate(m, args.cls)
    lines = [f"VALID {args.cls}"] if not vs else [f"VIOLATION {v}" for v in vs]
    _emit(args, lines, {
        "class": args.cls,
        "valid": not vs,
        "violations": [
            {"condition": v.condition, "witness": list(v.witness), "set": sorted(v.set) if v.set is not None else None}
            for v in vs
        ],
    })
    return OK if not vs else FAIL


def cmd_check_proof(args) -> int:
    script = _script(args.file)
    try:
        v = check(script)
    except KernelError as e:
        raise Malformed(str(e)) from None
    concl = fmt(v.conclusion) if v.conclusion is not None else None
    lines = [f"ACCEPT {concl}" if v.ok else str(v)]
    if v.ok:
        lines.append("footprint: " + " ".join(sorted(v.footprint)))
    _emit(args, lines, {
        "ok": v.ok, "line": v.line, "reason": v.reason, "conclusion": concl,
        "footprint": sorted(v.footprint),
    })
    return OK if v.ok else FAIL


def cmd_check_corpus(args) -> int:
    entries, _ = verify_corpus()
    lines = [f"ACCEPT {e.name}" if e.verdict.ok else f"REJECT {e.name}: {e.verdict}" for e in entries]
    _emit(args, lines, {
        "items": [{"name": e.name, "ok": e.verdict.ok, "reason": e.verdict.reason} for e in entries],
    })
    return OK if all(e.verdict.ok for e in entries) else FAIL


def cmd_translate(args) -> int:
    try:
        if args.tr:
            out = fmt(translate.tr(_formula(args.formula, "modal")))
        elif args.untr:
            out = fmt(translate.untr(_formula(args.formula, "cond")))
        elif args.erase:
            out = fmt(translate.project_to_int(_formula(args.formula, "cond")))
        else:
            out = fo_fmt(translate.st(args.st, _formula(args.formula, "cond")))
    except ValueError as e:
        if isinstance(e, Malformed):
            raise
        raise Malformed(str(e)) from None
    _emit(args, [out], {"translation": out})
    return OK


def cmd_countermodel(args) -> int:
    f = _formula(args.formula)
    try:
        pm = models.countermodel_search(f, args.cls, args.max_worlds, args.budget, args.seed)
    except (models.EvalError, ValueError) as e:
        raise Malformed(str(e)) from None
    if pm is None:
        if args.json:
            print(json.dumps({"found": False}))
        else:
            print(f"NONE within budget {args.budget}", file=sys.stderr)
        return FAIL
    witness = {"world": pm.world, "model": models.model_to_json(pm.model)}
    print(json.dumps({"found": True, **witness} if args.json else witness, indent=2, sort_keys=True))
    return OK


def cmd_glue(args) -> int:
    pm = models.glue(_model(args.file1), _model(args.file2))
    print(json.dumps({"world": pm.world, "model": models.model_to_json(pm.model)}, indent=2, sort_keys=True))
    return OK


def cmd_th_check(args) -> int:
    try:
        s = fosem.sheaf_from_json(_read_json(args.sheaf))
    except fosem.SheafError as e:
        raise Malformed(f"{args.sheaf}: {e}") from None
    vars = [v for v in (args.vars or "").split(",") if v]
    for v in vars:
        if not v[:1].islower() or not v.isidentifier():
            raise Malformed(f"bad variable name {v!r}")
    vs = fosem.validate_sheaf(s)
    if vs:
        _emit(args, [f"INVALID {v}" for v in vs], {
            "valid": False, "violations": [{"condition": v.condition, "witness": list(v.witness)} for v in vs],
        })
        return FAIL
    fails = fosem.check_th(s, vars)
    labels = [lab for lab, _ in fosem.th_sentences(vars)]
    lines = []
    for lab in labels:
        bad = [n for l, n in fails if l == lab]
        lines.append(f"PASS {lab}" if not bad else f"FAIL {lab} at {', '.join(bad)}")
    _emit(args, lines, {
        "valid": True,
        "sentences": [{"label": lab, "failing_nodes": [n for l, n in fails if l == lab]} for lab in labels],
    })
    return OK if not fails else FAIL


def cmd_port_proof(args) -> int:
    script = _script(args.file)
    try:
        parse_dialect(args.target)
        ported = port_proof(script, args.target, args.bridge)
    except KernelError as e:
        raise Malformed(str(e)) from None
    v = check(ported)
    if args.json:
        print(json.dumps({"ok": v.ok, "conclusion": fmt(ported.conclusion), "script": dumps(ported)},
                         indent=2, sort_keys=True))
    else:
        sys.stdout.write(dumps(ported))
    return OK if v.ok else FAIL


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="intck", description="Intuitionistic conditional logic toolkit.")
    p.add_argument("--json", action="store_true", help="structured JSON report")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="structured JSON report")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("fmt", cmd_fmt, "parse and print a formula in canonical form")
    sp.add_argument("formula")
    sp.add_argument("--dialect", choices=["cond", "modal"], default="cond")

    sp = add("eval", cmd_eval, "evaluate a formula at a world of a model")
    sp.add_argument("--model", required=True)
    sp.add_argument("--mode", choices=list(models.MODES), default="int")
    sp.add_argument("--world", required=True)
    sp.add_argument("formula")

    sp = add("validate-model", cmd_validate_model, "check the frame conditions of a model")
    sp.add_argument("file")
    sp.add_argument("--class", dest="cls", choices=list(models.CLASSES), default="chellas")

    sp = add("check-proof", cmd_check_proof, "check a proof script")
    sp.add_argument("file")

    add("check-corpus", cmd_check_corpus, "check every bundled proof")

    sp = add("translate", cmd_translate, "translate a formula")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--tr", action="store_true", help="modal to conditional")
    g.add_argument("--untr", action="store_true", help="conditional to modal")
    g.add_argument("--st", metavar="X", help="first-order standard translation with free variable X")
    g.add_argument("--erase", action="store_true", help="replace conditionals by T / F")
    sp.add_argument("formula")

    sp = add("countermodel", cmd_countermodel, "search for a refuting finite model")
    sp.add_argument("formula")
    sp.add_argument("--class", dest="cls", choices=list(models.CLASSES), default="chellas")
    sp.add_argument("--max-worlds", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=10_000)

    sp = add("glue", cmd_glue, "glue two models under a fresh root")
    sp.add_argument("file1")
    sp.add_argument("file2")

    sp = add("th-check", cmd_th_check, "check the first-order theory on a finite sheaf")
    sp.add_argument("--sheaf", required=True)
    sp.add_argument("--vars", default="")

    sp = add("port-proof", cmd_port_proof, "port a proof script to another calculus")
    sp.add_argument("file")
    sp.add_argument("--target", required=True)
    sp.add_argument("--bridge", required=True)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return MALFORMED if e.code else OK
    if args.command == "translate" and args.st is not None and not args.st.isidentifier():
        print(f"error: bad variable name {args.st!r}", file=sys.stderr)
        return MALFORMED
    try:
        return args.fn(args)
    except Malformed as e:
        print(f"error: {e}", file=sys.stderr)
        return MALFORMED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
