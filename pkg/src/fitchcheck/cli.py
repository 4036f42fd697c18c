"""Command-line interface: check, countermodel, fmt, serve.

Exit codes for ``check``: 0 accepted (and, with --max-domain, no countermodel),
1 rejected, 2 parse error, 3 I/O trouble.  ``countermodel`` exits 2 on a parse
error and 4 when the structure space blows the cap.
"""

from __future__ import annotations

import argparse
import os
import sys

from .checker import CheckConfig, check_proof
from .corpus import list_examples
from .jsonio import dumps, document_to_json, report_to_json, verdict_to_json
from .parser import ParseError, parse_formula
from .printer import format_formula
from .proofdoc import ProofParseError, format_proof, parse_proof
from .semantics import (
    Countermodel, DEFAULT_MAX_STRUCTURES, ResourceError, Structure, ValidUpTo,
    entails,
)


def _structure_cap() -> int:
    raw = os.environ.get("ND_MAX_STRUCTURES")
    if raw:
        try:
            return int(raw)
        except ValueError:
            print(f"warning: ignoring bad ND_MAX_STRUCTURES={raw!r}", file=sys.stderr)
    return DEFAULT_MAX_STRUCTURES


def render_structure(s: Structure) -> str:
    """Interpretation tables, human-readable."""
    lines = [f"domain: {{{', '.join(str(d) for d in range(s.domain_size))}}}"]
    for c, v in sorted(s.const_interp.items()):
        lines.append(f"  {c} ↦ {v}")
    for f, table in sorted(s.func_interp.items()):
        for args, v in sorted(table.items()):
            lines.append(f"  {f}({', '.join(map(str, args))}) = {v}")
    for p, rows in sorted(s.pred_interp.items()):
        shown = ", ".join("(" + ", ".join(map(str, r)) + ")" for r in sorted(rows))
        lines.append(f"  {p} = {{{shown}}}")
    return "\n".join(lines)


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        raise SystemExit(3)


def cmd_check(args) -> int:
    text = _read_file(args.path)
    try:
        doc = parse_proof(text)
    except ProofParseError as e:
        print(f"error: {args.path}: {e}", file=sys.stderr)
        return 2
    cfg = CheckConfig(strict=args.strict)
    report = check_proof(doc, cfg)
    verdict = None
    if args.max_domain and report.accepted and report.proved is not None:
        try:
            verdict = entails(list(doc.premises), report.proved, args.max_domain,
                              cap=_structure_cap())
        except ResourceError as e:
            print(f"error: {e}", file=sys.stderr)
            return 4

    if args.json:
        body = {"version": "v1", "report": report_to_json(report)}
        if verdict is not None:
            body["verdict"] = verdict_to_json(verdict)
        sys.stdout.write(dumps(body))
    else:
        name = doc.name or args.path
        if report.accepted:
            proved = format_formula(report.proved) if report.proved is not None else "(nothing)"
            print(f"{name}: accepted, proved {proved}")
        else:
            print(f"{name}: rejected")
        for d in report.diagnostics:
            print(f"  {d}")
        if isinstance(verdict, ValidUpTo):
            print(f"  no countermodel with at most {verdict.n} elements")
        elif isinstance(verdict, Countermodel):
            print("  COUNTERMODEL FOUND (the checker accepted an invalid argument!)")
            print(render_structure(verdict.structure))

    if not report.accepted:
        return 1
    if isinstance(verdict, Countermodel):
        return 1
    return 0


def cmd_countermodel(args) -> int:
    try:
        premises = [parse_formula(p) for p in args.premise]
        conclusion = parse_formula(args.conclusion)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        verdict = entails(premises, conclusion, args.max_domain, cap=_structure_cap())
    except ResourceError as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.json:
        sys.stdout.write(dumps({"version": "v1", "verdict": verdict_to_json(verdict)}))
    elif isinstance(verdict, ValidUpTo):
        print(f"no countermodel with at most {verdict.n} elements "
              "(not a proof of validity)")
    else:
        print("countermodel:")
        print(render_structure(verdict.structure))
    return 0


def cmd_fmt(args) -> int:
    text = _read_file(args.path)
    try:
        doc = parse_proof(text)
    except ProofParseError as e:
        print(f"error: {args.path}: {e}", file=sys.stderr)
        return 2
    if args.json:
        sys.stdout.write(dumps({"version": "v1", "document": document_to_json(doc)}))
    else:
        sys.stdout.write(format_proof(doc))
    return 0


def cmd_examples(args) -> int:
    for entry in list_examples():
        print(f"{entry.id}: {entry.title}")
    return 0


def cmd_serve(args) -> int:
    from .service import serve
    serve(addr=args.addr, port=args.port, ui_dir=args.ui_dir, cap=_structure_cap())
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="fitchcheck",
                                 description="Check Fitch-style natural deduction proofs "
                                             "and hunt for countermodels.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check a .ndp proof file")
    p.add_argument("path")
    p.add_argument("--strict", action="store_true",
                   help="reject the derived rules QN, NegImp, IP")
    p.add_argument("--json", action="store_true", help="emit the CheckReport as JSON")
    p.add_argument("--max-domain", type=int, metavar="N", default=0,
                   help="also look for countermodels up to domain size N")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("countermodel", help="search for a countermodel to an argument")
    p.add_argument("--premise", action="append", default=[], metavar="FORMULA")
    p.add_argument("--conclusion", required=True, metavar="FORMULA")
    p.add_argument("--max-domain", type=int, metavar="N", default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_countermodel)

    p = sub.add_parser("fmt", help="re-emit a proof file in canonical form")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="emit the document as JSON")
    p.set_defaults(func=cmd_fmt)

    p = sub.add_parser("examples", help="list the bundled example proofs")
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("serve", help="run the HTTP JSON service")
    p.add_argument("--port", type=int, default=8621)
    p.add_argument("--addr", default="127.0.0.1")
    p.add_argument("--ui-dir", default=None,
                   help="also serve this directory of static files at /")
    p.set_defaults(func=cmd_serve)

    args = ap.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
