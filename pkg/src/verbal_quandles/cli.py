"""Command-line entry point.

Exit codes: 0 pass, 1 mathematical failure, 2 input error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional

from . import __version__
from .axioms import check_q1, check_q3, check_word, decompose_x, Q2Failure
from .classifier import (
    DEFAULT_BUDGET,
    MODES,
    NPARAM,
    SINGLE,
    EnumerationBudgetExceeded,
    classify,
    enumerate_words,
    translated_conjugation_parameters,
)
from .finite import (
    GroupTableError,
    build_verbal_quandle,
    build_ybe,
    from_cayley_table,
    make_cyclic,
    make_dihedral,
    make_quaternion,
    make_symmetric,
    verify_quandle,
    verify_ybe,
)
from .freegroup import ParseError, SubstitutionError, format_tex, format_word, parse

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def parse_group_spec(spec: str):
    """``Zn``, ``Dn``, ``Sn``, ``Q8`` or ``@path/to/table.json``."""
    spec = spec.strip()
    if spec.startswith("@"):
        return from_cayley_table(spec[1:])
    if spec == "Q8":
        return make_quaternion()
    m = re.fullmatch(r"([ZDS])(\d+)", spec)
    if not m:
        raise InputError(f"bad group spec {spec!r}; expected Zn, Dn, Sn, Q8 or @path")
    kind, n = m.group(1), int(m.group(2))
    return {"Z": make_cyclic, "D": make_dihedral, "S": make_symmetric}[kind](n)


def _params_for(mode: str, word):
    if mode == SINGLE:
        return ("z",)
    return tuple(sorted(word.generators() - {"x", "y"}))


def _verdict_dict(verdict) -> dict:
    return {
        "passed": verdict.passed,
        "failed_axiom": verdict.failed_axiom,
        "reason": verdict.reason,
        "witness": None if verdict.witness is None else [format_word(w) for w in verdict.witness],
    }


def cmd_check(args) -> tuple:
    W = parse(args.word)
    params = _params_for(args.mode, W)
    per_axiom = {}
    try:
        decompose_x(W)
        per_axiom["q2"] = {"passed": True}
    except Q2Failure as exc:
        per_axiom["q2"] = {"passed": False, "reason": exc.reason}
    if per_axiom["q2"]["passed"]:
        per_axiom["q1"] = _verdict_dict(check_q1(W, params=params))
        per_axiom["q3"] = _verdict_dict(check_q3(W, params=params))
    verdict = check_word(W, params=params)

    lines = [f"W = {format_tex(W)}"]
    for axiom in ("q2", "q1", "q3"):
        if axiom not in per_axiom:
            lines.append(f"  {axiom}: skipped")
            continue
        res = per_axiom[axiom]
        status = "PASS" if res["passed"] else "FAIL"
        extra = ""
        if not res["passed"]:
            extra = f" ({res['reason']})" if res.get("reason") else ""
            if res.get("witness"):
                extra += f"\n      lhs = {res['witness'][0]}\n      rhs = {res['witness'][1]}"
        lines.append(f"  {axiom}: {status}{extra}")
    lines.append("PASS: quandle word" if verdict.passed else f"FAIL {verdict.failed_axiom}")
    results = {"verdict": _verdict_dict(verdict), "axioms": per_axiom}
    return (EXIT_OK if verdict.passed else EXIT_FAIL), results, lines


def cmd_classify(args) -> tuple:
    W = parse(args.word)
    params = _params_for(args.mode, W)
    tag = classify(W, args.mode, params=params)
    verdict = check_word(W, params=params)
    lines = [f"W = {format_tex(W)}"]
    results = {"classification": None if tag is None else tag.to_dict(), "check": _verdict_dict(verdict)}
    if tag is not None:
        lines.append(tag.describe())
    else:
        lines.append("Unclassified")
        lines.append("check: PASS" if verdict.passed else f"check: FAIL {verdict.failed_axiom}")
        if verdict.passed:
            lines.append("WARNING: this word satisfies all quandle axioms but matches none of the six families")
            st = translated_conjugation_parameters(W)
            if st is not None:
                results["translated_conjugation"] = {"s": st[0], "t": st[1]}
                lines.append(
                    f"  it is (y z^s)^(-t) x z^s (y z^s)^t z^(-s) with s = {st[0]}, t = {st[1]}"
                )
    return (EXIT_OK if tag is not None else EXIT_FAIL), results, lines


def cmd_enumerate(args) -> tuple:
    mode = NPARAM if args.params > 1 else args.mode
    report = enumerate_words(
        args.max_syllables,
        args.max_exp,
        mode,
        args.params,
        max_candidates=args.budget,
        keep_failures=args.keep_failures,
        workers=args.workers,
    )
    doc = report.to_dict()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, sort_keys=True, indent=2)
            fh.write("\n")
    lines = [
        f"candidates checked: {report.candidates_checked}",
        f"passing words: {len(report.passing)}",
    ]
    for W, tag in report.passing:
        lines.append(f"  {format_word(W):40s} {tag.describe() if tag else 'UNCLASSIFIED'}")
    lines.append("families found: " + ", ".join(map(str, report.families_found())))
    if report.unclassified:
        lines.append(f"WARNING: {len(report.unclassified)} passing word(s) match none of the six families")
    return (EXIT_OK if not report.unclassified else EXIT_FAIL), doc, lines


def cmd_instantiate(args) -> tuple:
    G = parse_group_spec(args.group)
    W = parse(args.word)
    try:
        params = [G.element_index(p) for p in args.param]
    except (ValueError, IndexError) as exc:
        raise InputError(str(exc)) from None
    c = params if params else None
    Q = build_verbal_quandle(G, W, c)
    qv = verify_quandle(Q)
    yv = verify_ybe(build_ybe(Q))
    if args.emit:
        with open(args.emit, "w") as fh:
            json.dump(Q.to_document(), fh, sort_keys=True, indent=2)
            fh.write("\n")
    if args.emit_ybe:
        with open(args.emit_ybe, "w") as fh:
            json.dump(build_ybe(Q).to_document(), fh, sort_keys=True, indent=2)
            fh.write("\n")

    def describe(v, kind):
        if v.passed:
            return f"{kind}: PASS"
        axiom = getattr(v, "failed_axiom", None) or getattr(v, "failure", None)
        labels = ", ".join(G.element_label(i) for i in v.witness)
        return f"{kind}: FAIL {axiom} at {tuple(v.witness)} = ({labels})"

    lines = [f"group {G.label} (order {G.order}), W = {format_tex(W)}"]
    if params:
        lines.append("parameters: " + ", ".join(f"{i} = {G.element_label(i)}" for i in params))
    if args.show_table:
        lines += [" ".join(f"{v:3d}" for v in row) for row in Q.op]
    lines += [describe(qv, "quandle"), describe(yv, "ybe")]
    results = {
        "group": G.label,
        "order": G.order,
        "parameters": params,
        "quandle": {"passed": qv.passed, "failed_axiom": qv.failed_axiom, "witness": qv.witness},
        "ybe": {"passed": yv.passed, "failure": yv.failure, "witness": yv.witness},
        "table": Q.to_document(),
    }
    return (EXIT_OK if qv.passed and yv.passed else EXIT_FAIL), results, lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="verbal-quandles", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--format", choices=("human", "structured"), default="human")

    p = sub.add_parser("check", help="decide the quandle axioms for a word over all groups")
    p.add_argument("word")
    p.add_argument("--mode", choices=MODES, default=SINGLE)
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="match a word against the six families")
    p.add_argument("word")
    p.add_argument("--mode", choices=MODES, default=SINGLE)
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", help="bounded sweep over canonical words")
    p.add_argument("--max-syllables", type=int, default=3)
    p.add_argument("--max-exp", type=int, default=2)
    p.add_argument("--params", type=int, default=1, help="number of parameters (n > 1 implies n-parameter mode)")
    p.add_argument("--mode", choices=MODES, default=SINGLE)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--keep-failures", type=int, default=20)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("instantiate", help="build and verify a verbal quandle over a finite group")
    p.add_argument("--group", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--param", action="append", default=[], help="parameter element (index, label or cycles)")
    p.add_argument("--emit", help="write the quandle table document here")
    p.add_argument("--emit-ybe", help="write the Yang-Baxter map document here")
    p.add_argument("--show-table", action="store_true")
    common(p)
    p.set_defaults(func=cmd_instantiate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_syllables", 0) < 0 or getattr(args, "max_exp", 1) < 1 or getattr(args, "params", 1) < 1:
        print("error: bounds must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        code, results, lines = args.func(args)
    except EnumerationBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, InputError, GroupTableError, SubstitutionError, OSError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.format == "structured":
        inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "format", "subcommand")}
        doc = {"tool_version": __version__, "subcommand": args.subcommand, "inputs": inputs, "results": results}
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
