"""Canonical Unicode rendering of terms and formulas.

Parentheses are minimal: re-parsing the output reproduces the input tree.
"""

from __future__ import annotations

from .formulas import (
    App, Bottom, Const, Exists, Forall, Formula, Iff, Imp, And, Not, Or,
    Pred, Term, Top, Var,
)

# precedence: ↔ 1, → 2, ∨ 3, ∧ 4, prefix ops 5, atoms 6
_PREC = {Iff: 1, Imp: 2, Or: 3, And: 4, Not: 5, Forall: 5, Exists: 5,
         Top: 6, Bottom: 6, Pred: 6}


def format_term(t: Term) -> str:
    match t:
        case Var(name) | Const(name):
            return name
        case App(fn, args):
            return f"{fn}({', '.join(format_term(a) for a in args)})"
    raise TypeError(f"not a term: {t!r}")


def _fmt(f: Formula, min_prec: int) -> str:
    prec = _PREC[type(f)]
    match f:
        case Top():
            body = "⊤"
        case Bottom():
            body = "⊥"
        case Pred(name, args):
            body = name if not args else f"{name}({', '.join(format_term(a) for a in args)})"
        case Not(inner):
            body = "¬" + _fmt(inner, 5)
        case Forall(v, inner):
            body = f"∀{v} " + _fmt(inner, 5)
        case Exists(v, inner):
            body = f"∃{v} " + _fmt(inner, 5)
        case And(l, r):
            body = _fmt(l, 4) + " ∧ " + _fmt(r, 5)
        case Or(l, r):
            body = _fmt(l, 3) + " ∨ " + _fmt(r, 4)
        case Imp(l, r):
            body = _fmt(l, 3) + " → " + _fmt(r, 2)
        case Iff(l, r):
            body = _fmt(l, 2) + " ↔ " + _fmt(r, 1)
        case _:
            raise TypeError(f"not a formula: {f!r}")
    return f"({body})" if prec < min_prec else body


def format_formula(f: Formula) -> str:
    """Canonical rendering; parse_formula(format_formula(f)) == f."""
    return _fmt(f, 0)
