"""JSON wire forms (schema v1) shared by the CLI and the HTTP service.

Documents travel with formulas as canonical text; the grammar is the single
source of truth for both.  /v1/parse is the one place a structured AST is
emitted.  Loading rejects unknown fields so that typos fail loudly.
"""

from __future__ import annotations

import json
from typing import Any

from .checker import CheckReport
from .formulas import (
    And, App, Bottom, Const, Exists, Forall, Formula, Iff, Imp, Not, Or,
    Pred, Term, Top, Var,
)
from .parser import parse_formula
from .printer import format_formula
from .proofdoc import (
    Citation, Diagnostic, Justification, LINE_KINDS, ProofDocument,
    ProofLine, DERIVED,
)
from .semantics import Countermodel, Structure, ValidUpTo, Verdict

SCHEMA_VERSION = "v1"


class WireFormatError(Exception):
    """Malformed JSON body: wrong shape, unknown field, or version mismatch."""


def dumps(obj: Any) -> str:
    """The one JSON renderer: CLI and API output must be byte-identical."""
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


# --- AST ---

def term_to_json(t: Term) -> dict:
    match t:
        case Var(name):
            return {"term": "var", "name": name}
        case Const(name):
            return {"term": "const", "name": name}
        case App(fn, args):
            return {"term": "app", "fn": fn, "args": [term_to_json(a) for a in args]}
    raise TypeError(f"not a term: {t!r}")


def formula_to_json(f: Formula) -> dict:
    match f:
        case Top():
            return {"node": "top"}
        case Bottom():
            return {"node": "bottom"}
        case Pred(name, args):
            return {"node": "pred", "name": name, "args": [term_to_json(a) for a in args]}
        case Not(body):
            return {"node": "not", "body": formula_to_json(body)}
        case And(l, r):
            return {"node": "and", "left": formula_to_json(l), "right": formula_to_json(r)}
        case Or(l, r):
            return {"node": "or", "left": formula_to_json(l), "right": formula_to_json(r)}
        case Imp(l, r):
            return {"node": "imp", "left": formula_to_json(l), "right": formula_to_json(r)}
        case Iff(l, r):
            return {"node": "iff", "left": formula_to_json(l), "right": formula_to_json(r)}
        case Forall(v, body):
            return {"node": "forall", "var": v, "body": formula_to_json(body)}
        case Exists(v, body):
            return {"node": "exists", "var": v, "body": formula_to_json(body)}
    raise TypeError(f"not a formula: {f!r}")


# --- Documents ---

def _check_fields(obj: dict, allowed: set[str], what: str) -> None:
    if not isinstance(obj, dict):
        raise WireFormatError(f"{what} must be an object")
    unknown = set(obj) - allowed
    if unknown:
        raise WireFormatError(f"unknown field(s) in {what}: {', '.join(sorted(unknown))}")


def citation_to_json(c: Citation):
    return {"start": c.start, "end": c.end}


def line_to_json(ln: ProofLine) -> dict:
    return {
        "number": ln.number,
        "depth": ln.depth,
        "kind": ln.kind,
        "formula": format_formula(ln.formula) if ln.formula is not None else None,
        "justification": None if ln.justification is None else {
            "rule": ln.justification.rule,
            "cited": [citation_to_json(c) for c in ln.justification.cited],
        },
        "boxed_constant": ln.boxed_constant,
    }


def document_to_json(doc: ProofDocument) -> dict:
    return {
        "name": doc.name,
        "premises": [format_formula(p) for p in doc.premises],
        "lines": [line_to_json(ln) for ln in doc.lines],
        "declared_goal": format_formula(doc.declared_goal)
        if doc.declared_goal is not None else None,
    }


def _formula_from_text(text: Any, what: str) -> Formula:
    if not isinstance(text, str):
        raise WireFormatError(f"{what} must be a formula string")
    try:
        return parse_formula(text)
    except Exception as e:
        raise WireFormatError(f"bad formula in {what}: {e}")


def document_from_json(obj: dict) -> ProofDocument:
    _check_fields(obj, {"name", "premises", "lines", "declared_goal"}, "document")
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise WireFormatError("name must be a string")
    goal = None
    if obj.get("declared_goal") is not None:
        goal = _formula_from_text(obj["declared_goal"], "declared_goal")
    raw_lines = obj.get("lines")
    if not isinstance(raw_lines, list):
        raise WireFormatError("lines must be an array")

    lines: list[ProofLine] = []
    for i, raw in enumerate(raw_lines, start=1):
        _check_fields(raw, {"number", "depth", "kind", "formula",
                            "justification", "boxed_constant"}, f"line {i}")
        number = raw.get("number")
        depth = raw.get("depth")
        kind = raw.get("kind")
        if number != i:
            raise WireFormatError(f"line {i} carries number {number}")
        if not isinstance(depth, int) or depth < 0:
            raise WireFormatError(f"line {i}: bad depth")
        if kind not in LINE_KINDS:
            raise WireFormatError(f"line {i}: bad kind {kind!r}")
        formula = None
        if raw.get("formula") is not None:
            formula = _formula_from_text(raw["formula"], f"line {i}")
        justification = None
        if raw.get("justification") is not None:
            j = raw["justification"]
            _check_fields(j, {"rule", "cited"}, f"line {i} justification")
            rule = j.get("rule")
            if not isinstance(rule, str):
                raise WireFormatError(f"line {i}: rule must be a string")
            cited = []
            for c in j.get("cited", []):
                _check_fields(c, {"start", "end"}, f"line {i} citation")
                start, end = c.get("start"), c.get("end")
                if not isinstance(start, int) or (end is not None and not isinstance(end, int)):
                    raise WireFormatError(f"line {i}: bad citation")
                cited.append(Citation(start, end))
            justification = Justification(rule, tuple(cited))
        if kind == DERIVED and justification is None:
            raise WireFormatError(f"line {i}: derived lines need a justification")
        boxed = raw.get("boxed_constant")
        if boxed is not None and not isinstance(boxed, str):
            raise WireFormatError(f"line {i}: bad boxed_constant")
        lines.append(ProofLine(number=i, depth=depth, kind=kind, formula=formula,
                               justification=justification, boxed_constant=boxed))

    doc = ProofDocument(name=name, lines=tuple(lines), declared_goal=goal)
    stated = obj.get("premises")
    if stated is not None:
        if not isinstance(stated, list):
            raise WireFormatError("premises must be an array")
        actual = [format_formula(p) for p in doc.premises]
        if stated != actual:
            raise WireFormatError("premises do not match the premise lines")
    return doc


# --- Reports, verdicts, structures ---

def diagnostic_to_json(d: Diagnostic) -> dict:
    return {"line": d.line, "code": d.code, "severity": d.severity,
            "message": d.message, "related": list(d.related)}


def report_to_json(r: CheckReport) -> dict:
    return {
        "accepted": r.accepted,
        "proved": format_formula(r.proved) if r.proved is not None else None,
        "diagnostics": [diagnostic_to_json(d) for d in r.diagnostics],
    }


def structure_to_json(s: Structure) -> dict:
    return {
        "domain_size": s.domain_size,
        "constants": dict(sorted(s.const_interp.items())),
        "functions": {f: [list(k) + [v] for k, v in sorted(table.items())]
                      for f, table in sorted(s.func_interp.items())},
        "predicates": {p: sorted(list(t) for t in rows)
                       for p, rows in sorted(s.pred_interp.items())},
    }


def verdict_to_json(v: Verdict) -> dict:
    if isinstance(v, ValidUpTo):
        return {"kind": "valid_up_to", "n": v.n}
    if isinstance(v, Countermodel):
        return {"kind": "countermodel", "structure": structure_to_json(v.structure)}
    raise TypeError(f"not a verdict: {v!r}")
