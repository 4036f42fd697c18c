"""Fitch-style proof documents: model, text format, and scope computation.

Native text format, one line each::

    <number>. <"|" per nesting level> <formula> ; <rule> <citations>

Premises use ``; premise``, assumptions ``; assume``, and a subproof that
introduces a fresh constant opens with ``[c] ; box`` (or ``[c] φ ; assume``
when combined with an assumption).  Citations are comma-separated line
numbers; a closed subproof is cited as a range ``i-j``.  ``#`` starts a
comment.  Optional ``name:`` and ``goal:`` directives precede line 1.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Optional

from .formulas import (Formula, SignatureError, free_vars, infer_signature,
                       is_variable_name)
from .parser import ParseError, parse_formula
from .printer import format_formula

# --- Rules ---

RULES = (
    "NotI", "NotE", "AndI", "AndE", "OrI", "OrE", "ImpI", "ImpE",
    "IffI", "IffE", "ForallI", "ForallE", "ExistsI", "ExistsE",
    "Reit", "BottomI", "IP", "QN", "NegImp",
)

DERIVED_RULES = frozenset({"QN", "NegImp", "IP"})

RULE_DISPLAY = {
    "NotI": "¬I", "NotE": "¬E", "AndI": "∧I", "AndE": "∧E",
    "OrI": "∨I", "OrE": "∨E", "ImpI": "→I", "ImpE": "→E",
    "IffI": "↔I", "IffE": "↔E", "ForallI": "∀I", "ForallE": "∀E",
    "ExistsI": "∃I", "ExistsE": "∃E", "Reit": "Reit", "BottomI": "⊥",
    "IP": "IP", "QN": "QN", "NegImp": "NegImp",
}

_RULE_ALIASES = {
    "¬I": "NotI", "~I": "NotI",
    "¬E": "NotE", "~E": "NotE",
    "∧I": "AndI", "&I": "AndI",
    "∧E": "AndE", "&E": "AndE",
    "∨I": "OrI", "|I": "OrI",
    "∨E": "OrE", "|E": "OrE",
    "→I": "ImpI", "->I": "ImpI",
    "→E": "ImpE", "->E": "ImpE",
    "↔I": "IffI", "<->I": "IffI",
    "↔E": "IffE", "<->E": "IffE",
    "∀I": "ForallI", "∀E": "ForallE",
    "∃I": "ExistsI", "∃E": "ExistsE",
    "Re": "Reit",
    "⊥": "BottomI", "bot": "BottomI",
    "Def": "QN",        # quantifier-negation rewrites are labeled Def in older texts
    "EQUIV": "NegImp",  # likewise the negated-conditional rewrite
}
_RULE_ALIASES.update({r: r for r in RULES})


def canonical_rule(name: str) -> Optional[str]:
    return _RULE_ALIASES.get(name)


# --- Model ---

@dataclass(frozen=True)
class Citation:
    """A single line (end is None) or an inclusive subproof range."""
    start: int
    end: Optional[int] = None

    @property
    def is_range(self) -> bool:
        return self.end is not None

    def __str__(self) -> str:
        return f"{self.start}-{self.end}" if self.is_range else str(self.start)


@dataclass(frozen=True)
class Justification:
    rule: str                       # canonical rule name (unknown names survive JSON input)
    cited: tuple[Citation, ...] = ()


PREMISE = "premise"
ASSUMPTION = "assumption"
DERIVED = "derived"
BOXED_CONSTANT = "boxed-constant"

LINE_KINDS = (PREMISE, ASSUMPTION, DERIVED, BOXED_CONSTANT)


@dataclass(frozen=True)
class ProofLine:
    number: int
    depth: int
    kind: str
    formula: Optional[Formula]
    justification: Optional[Justification] = None
    boxed_constant: Optional[str] = None

    def opens_subproof(self) -> bool:
        return self.kind in (ASSUMPTION, BOXED_CONSTANT)


@dataclass(frozen=True)
class ProofDocument:
    name: str
    lines: tuple[ProofLine, ...]
    declared_goal: Optional[Formula] = None

    @property
    def premises(self) -> tuple[Formula, ...]:
        return tuple(ln.formula for ln in self.lines if ln.kind == PREMISE)

    def line(self, number: int) -> ProofLine:
        return self.lines[number - 1]


@dataclass(frozen=True)
class Diagnostic:
    line: int
    code: str
    severity: str               # "error" | "warning"
    message: str
    related: tuple[int, ...] = ()

    def __str__(self) -> str:
        rel = f" (see line{'s' if len(self.related) > 1 else ''} " + \
              ", ".join(map(str, self.related)) + ")" if self.related else ""
        return f"line {self.line}: {self.severity} {self.code}: {self.message}{rel}"


class ProofParseError(Exception):
    """Structural error in a proof file."""

    def __init__(self, message: str, line: int = 0, column: int = 0, code: str = "E_SYNTAX"):
        super().__init__(f"line {line}: {message}" if line else message)
        self.message = message
        self.line = line
        self.column = column
        self.code = code


# --- Scope structure ---

@functools.lru_cache(maxsize=256)
def subproof_spans(doc: ProofDocument) -> tuple[tuple[int, int], ...]:
    """All subproofs as (opener, last line) pairs, in order of opening."""
    spans: list[tuple[int, int]] = []
    stack: list[tuple[int, int]] = []  # (opener number, depth)
    for ln in doc.lines:
        while stack and stack[-1][1] > ln.depth:
            opener, _ = stack.pop()
            spans.append((opener, ln.number - 1))
        if ln.opens_subproof() and stack and stack[-1][1] == ln.depth:
            opener, _ = stack.pop()
            spans.append((opener, ln.number - 1))
        if ln.opens_subproof():
            stack.append((ln.number, ln.depth))
    last = doc.lines[-1].number if doc.lines else 0
    while stack:
        opener, _ = stack.pop()
        spans.append((opener, last))
    return tuple(sorted(spans))


@functools.lru_cache(maxsize=256)
def scope_paths(doc: ProofDocument) -> tuple[tuple[int, ...], ...]:
    """For each line (by index), the opener numbers of the subproofs containing it."""
    paths: list[tuple[int, ...]] = []
    stack: list[tuple[int, int]] = []
    for ln in doc.lines:
        while stack and stack[-1][1] > ln.depth:
            stack.pop()
        if ln.opens_subproof() and stack and stack[-1][1] == ln.depth:
            stack.pop()
        if ln.opens_subproof():
            stack.append((ln.number, ln.depth))
        paths.append(tuple(opener for opener, _ in stack))
    return tuple(paths)


def scope_path(doc: ProofDocument, number: int) -> tuple[int, ...]:
    return scope_paths(doc)[number - 1]


def _is_prefix(shorter: tuple[int, ...], longer: tuple[int, ...]) -> bool:
    return longer[:len(shorter)] == shorter


def accessible(doc: ProofDocument, at: int) -> frozenset[Citation]:
    """Citations usable from line ``at``: earlier lines whose every enclosing
    subproof still encloses ``at``, plus closed subproofs hanging directly off
    a scope that encloses ``at``."""
    paths = scope_paths(doc)
    here = paths[at - 1]
    cites: set[Citation] = set()
    for ln in doc.lines:
        if ln.number >= at:
            break
        if _is_prefix(paths[ln.number - 1], here):
            cites.add(Citation(ln.number))
    for start, end in subproof_spans(doc):
        if end < at and _is_prefix(paths[start - 1][:-1], here):
            cites.add(Citation(start, end))
    return frozenset(cites)


# --- Text format ---

_LINE_RE = re.compile(r"^(\d+)\.\s*(.*)$")
_BOXED_RE = re.compile(r"^\[\s*([A-Za-z][A-Za-z0-9_]*)\s*\]\s*(.*)$")
_CITE_RE = re.compile(r"^(\d+)(?:\s*-\s*(\d+))?$")


def _parse_justification(tail: str, lineno: int, text_line: str) -> Justification:
    parts = tail.split(None, 1)
    rule_word = parts[0].rstrip(",")
    rule = canonical_rule(rule_word)
    if rule is None:
        raise ProofParseError(f"{rule_word!r} is not a rule", lineno,
                              column=text_line.find(rule_word) + 1, code="E_UNKNOWN_RULE")
    cited: list[Citation] = []
    if len(parts) > 1:
        for chunk in parts[1].split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            m = _CITE_RE.match(chunk)
            if not m:
                raise ProofParseError(f"bad citation {chunk!r}", lineno,
                                      column=text_line.find(chunk) + 1)
            start = int(m.group(1))
            end = int(m.group(2)) if m.group(2) else None
            if start < 1 or (end is not None and end < start):
                raise ProofParseError(f"bad citation {chunk!r}", lineno)
            cited.append(Citation(start, end))
    return Justification(rule, tuple(cited))


def parse_proof(text: str) -> ProofDocument:
    """Parse the native proof text format, validating structure as it goes."""
    name = ""
    goal: Optional[Formula] = None
    lines: list[ProofLine] = []
    prev_depth = 0
    seen_non_premise = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        if not content.strip():
            continue
        stripped = content.strip()
        if not lines and stripped.startswith("name:"):
            name = stripped[len("name:"):].strip()
            continue
        if not lines and stripped.startswith("goal:"):
            try:
                goal = parse_formula(stripped[len("goal:"):])
            except ParseError as e:
                raise ProofParseError(f"bad goal formula: {e}", lineno, column=e.position + 1)
            continue

        m = _LINE_RE.match(stripped)
        if not m:
            raise ProofParseError("expected '<number>. ...'", lineno)
        number = int(m.group(1))
        if number != len(lines) + 1:
            raise ProofParseError(f"line numbered {number}, expected {len(lines) + 1}",
                                  lineno, code="E_NUMBERING")
        rest = m.group(2)
        depth = 0
        while rest.startswith("|"):
            depth += 1
            rest = rest[1:].lstrip()

        if ";" not in rest:
            raise ProofParseError("missing '; <justification>'", lineno)
        body, tail = rest.split(";", 1)
        body = body.strip()
        tail = tail.strip()
        if not tail:
            raise ProofParseError("missing justification after ';'", lineno)

        boxed = None
        bm = _BOXED_RE.match(body)
        if bm:
            boxed = bm.group(1)
            if is_variable_name(boxed):
                raise ProofParseError(f"boxed name {boxed!r} must be a constant, not a variable",
                                      lineno)
            body = bm.group(2).strip()

        formula = None
        if body:
            try:
                formula = parse_formula(body)
            except ParseError as e:
                raise ProofParseError(f"bad formula: {e}", lineno, column=e.position + 1)

        lower_tail = tail.lower()
        if lower_tail == "premise":
            kind, justification = PREMISE, None
            if boxed or formula is None:
                raise ProofParseError("a premise is a bare formula", lineno)
            if depth != 0 or seen_non_premise:
                raise ProofParseError("premises must come first, at the top level",
                                      lineno, code="E_PREMISE_POSITION")
        elif lower_tail in ("assume", "assumption"):
            kind = BOXED_CONSTANT if boxed else ASSUMPTION
            justification = None
            if formula is None:
                raise ProofParseError("an assumption needs a formula", lineno)
        elif lower_tail in ("box", "boxed"):
            kind, justification = BOXED_CONSTANT, None
            if not boxed:
                raise ProofParseError("'box' opener needs a [c] constant", lineno)
            if formula is not None:
                raise ProofParseError("a boxed opener with a formula must say 'assume'", lineno)
        else:
            kind = DERIVED
            justification = _parse_justification(tail, lineno, content)
            if boxed:
                raise ProofParseError("[c] openers take 'box' or 'assume', not a rule", lineno)
            if formula is None:
                raise ProofParseError("a derived line needs a formula", lineno)

        if kind != PREMISE:
            seen_non_premise = True

        if kind in (ASSUMPTION, BOXED_CONSTANT):
            if depth < 1 or depth > prev_depth + 1:
                raise ProofParseError(
                    f"assumption at nesting depth {depth} cannot follow depth {prev_depth}",
                    lineno, code="E_BAD_DEPTH")
        else:
            if depth > prev_depth:
                raise ProofParseError(
                    "a subproof must open with an assumption or a [c] box",
                    lineno, code="E_SUBPROOF_OPENER")

        if formula is not None and free_vars(formula):
            loose = ", ".join(sorted(free_vars(formula)))
            raise ProofParseError(
                f"formula has free variables ({loose}); proof lines must be sentences",
                lineno, code="E_OPEN_FORMULA")

        lines.append(ProofLine(number=number, depth=depth, kind=kind,
                               formula=formula, justification=justification,
                               boxed_constant=boxed))
        prev_depth = depth

    if lines and lines[-1].depth != 0:
        doc = ProofDocument(name=name, lines=tuple(lines), declared_goal=goal)
        opener = scope_paths(doc)[-1][0]
        raise ProofParseError(f"subproof opened at line {opener} never closes",
                              line=opener, code="E_UNCLOSED_SUBPROOF")

    doc = ProofDocument(name=name, lines=tuple(lines), declared_goal=goal)
    try:
        document_signature(doc)
    except SignatureError as e:
        raise ProofParseError(str(e), code="E_SIGNATURE")
    return doc


def document_signature(doc: ProofDocument):
    """Signature over every formula and boxed constant in the document."""
    formulas = [ln.formula for ln in doc.lines if ln.formula is not None]
    if doc.declared_goal is not None:
        formulas.append(doc.declared_goal)
    boxed = [ln.boxed_constant for ln in doc.lines if ln.boxed_constant]
    return infer_signature(formulas, extra_constants=boxed)


def format_proof(doc: ProofDocument) -> str:
    """Canonical text rendering; parse_proof(format_proof(doc)) == doc."""
    out: list[str] = []
    if doc.name:
        out.append(f"name: {doc.name}")
    if doc.declared_goal is not None:
        out.append(f"goal: {format_formula(doc.declared_goal)}")
    for ln in doc.lines:
        bars = "| " * ln.depth
        if ln.kind == PREMISE:
            body, tail = format_formula(ln.formula), "premise"
        elif ln.kind == ASSUMPTION:
            body, tail = format_formula(ln.formula), "assume"
        elif ln.kind == BOXED_CONSTANT:
            if ln.formula is None:
                body, tail = f"[{ln.boxed_constant}]", "box"
            else:
                body, tail = f"[{ln.boxed_constant}] {format_formula(ln.formula)}", "assume"
        else:
            j = ln.justification
            cites = ", ".join(str(c) for c in j.cited)
            body = format_formula(ln.formula)
            tail = RULE_DISPLAY.get(j.rule, j.rule) + (f" {cites}" if cites else "")
        out.append(f"{ln.number}. {bars}{body} ; {tail}")
    return "\n".join(out) + ("\n" if out else "")
