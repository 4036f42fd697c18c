"""First-order terms and formulas, plus the syntactic algebra the checker needs.

Lexical convention: identifiers matching ``[u-z][0-9]*`` (a single lowercase
letter from u to z, optionally digit-suffixed) are variables; every other
identifier names a constant, function, or predicate.  The three kinds must
not share names within one document.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_VAR_RE = re.compile(r"[u-z][0-9]*")


def is_identifier(name: str) -> bool:
    return _IDENT_RE.fullmatch(name) is not None


def is_variable_name(name: str) -> bool:
    return _VAR_RE.fullmatch(name) is not None


class SignatureError(Exception):
    """A symbol is used inconsistently, or lacks an interpretation."""


class CaptureError(Exception):
    """Substitution would move a variable of the term under a binder."""

    def __init__(self, message: str, var: str, binder: str, path: tuple[int, ...]):
        super().__init__(message)
        self.var = var          # the variable of the term that would be captured
        self.binder = binder    # rendering of the capturing quantifier, e.g. "∀y"
        self.path = path        # child indices from the root to that quantifier


# --- Terms ---

@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Const(Term):
    name: str


@dataclass(frozen=True)
class App(Term):
    fn: str
    args: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if not self.args:
            raise ValueError("function application needs at least one argument")


# --- Formulas ---

@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Pred(Formula):
    name: str
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


TOP = Top()
BOTTOM = Bottom()

BinaryOp = Union[And, Or, Imp, Iff]
Quantified = Union[Forall, Exists]


# --- Variable and symbol bookkeeping ---

def term_vars(t: Term) -> frozenset[str]:
    match t:
        case Var(name):
            return frozenset({name})
        case Const(_):
            return frozenset()
        case App(_, args):
            return frozenset().union(*(term_vars(a) for a in args))
    raise TypeError(f"not a term: {t!r}")


def term_constants(t: Term) -> frozenset[str]:
    match t:
        case Var(_):
            return frozenset()
        case Const(name):
            return frozenset({name})
        case App(_, args):
            return frozenset().union(*(term_constants(a) for a in args))
    raise TypeError(f"not a term: {t!r}")


def free_vars(f: Formula) -> frozenset[str]:
    """Names of variables with at least one free occurrence in f."""
    match f:
        case Top() | Bottom():
            return frozenset()
        case Pred(_, args):
            return frozenset().union(frozenset(), *(term_vars(a) for a in args))
        case Not(body):
            return free_vars(body)
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            return free_vars(l) | free_vars(r)
        case Forall(v, body) | Exists(v, body):
            return free_vars(body) - {v}
    raise TypeError(f"not a formula: {f!r}")


def constants_of(f: Formula) -> frozenset[str]:
    """All constant names occurring anywhere in f, bound structure ignored."""
    match f:
        case Top() | Bottom():
            return frozenset()
        case Pred(_, args):
            return frozenset().union(frozenset(), *(term_constants(a) for a in args))
        case Not(body):
            return constants_of(body)
        case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
            return constants_of(l) | constants_of(r)
        case Forall(_, body) | Exists(_, body):
            return constants_of(body)
    raise TypeError(f"not a formula: {f!r}")


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def flatten_and(f: Formula) -> list[Formula]:
    """Conjunct list of the fully flattened view of f ([f] if not a conjunction)."""
    if isinstance(f, And):
        return flatten_and(f.left) + flatten_and(f.right)
    return [f]


def flatten_or(f: Formula) -> list[Formula]:
    if isinstance(f, Or):
        return flatten_or(f.left) + flatten_or(f.right)
    return [f]


def nest_and(parts: Iterable[Formula]) -> Formula:
    """Left-nested conjunction of the given formulas (at least one)."""
    parts = list(parts)
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


# --- Substitution ---

def _subst_term(t: Term, x: str, r: Term) -> Term:
    match t:
        case Var(name):
            return r if name == x else t
        case Const(_):
            return t
        case App(fn, args):
            return App(fn, tuple(_subst_term(a, x, r) for a in args))
    raise TypeError(f"not a term: {t!r}")


def substitute(f: Formula, x: str, t: Term) -> Formula:
    """Replace every free occurrence of x in f by t.

    Raises CaptureError if a variable of t would be bound by a quantifier
    of f; the checker never renames the user's formulas behind their back.
    """
    tvars = term_vars(t)

    def go(g: Formula, path: tuple[int, ...]) -> Formula:
        match g:
            case Top() | Bottom():
                return g
            case Pred(name, args):
                return Pred(name, tuple(_subst_term(a, x, t) for a in args))
            case Not(body):
                return Not(go(body, path + (0,)))
            case And(l, r):
                return And(go(l, path + (0,)), go(r, path + (1,)))
            case Or(l, r):
                return Or(go(l, path + (0,)), go(r, path + (1,)))
            case Imp(l, r):
                return Imp(go(l, path + (0,)), go(r, path + (1,)))
            case Iff(l, r):
                return Iff(go(l, path + (0,)), go(r, path + (1,)))
            case Forall(v, body) | Exists(v, body):
                if v == x:
                    return g
                if v in tvars and x in free_vars(body):
                    symbol = "∀" if isinstance(g, Forall) else "∃"
                    raise CaptureError(
                        f"substituting for {x} would capture {v} under {symbol}{v}",
                        var=v, binder=f"{symbol}{v}", path=path)
                inner = go(body, path + (0,))
                return Forall(v, inner) if isinstance(g, Forall) else Exists(v, inner)
        raise TypeError(f"not a formula: {g!r}")

    return go(f, ())


def is_free_for(t: Term, x: str, f: Formula) -> bool:
    """True iff no free occurrence of x in f sits under a binder of a variable of t."""
    tvars = term_vars(t)

    def go(g: Formula) -> bool:
        match g:
            case Top() | Bottom() | Pred():
                return True
            case Not(body):
                return go(body)
            case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
                return go(l) and go(r)
            case Forall(v, body) | Exists(v, body):
                if v == x:
                    return True
                if v in tvars and x in free_vars(body):
                    return False
                return go(body)
        raise TypeError(f"not a formula: {g!r}")

    return go(f)


def replace_constant(f: Formula, c: str, x: str) -> Formula:
    """Replace every occurrence of the constant c by the variable x.

    Used when forming a universal generalization.  Raises CaptureError if an
    occurrence of c sits inside the scope of a binder on x, since the new
    variable would be captured there.
    """

    def go_term(t: Term, shadowed: bool) -> Term:
        match t:
            case Var(_):
                return t
            case Const(name):
                if name == c:
                    if shadowed:
                        raise CaptureError(
                            f"generalizing {c} to {x} is blocked by an inner binder on {x}",
                            var=x, binder=x, path=())
                    return Var(x)
                return t
            case App(fn, args):
                return App(fn, tuple(go_term(a, shadowed) for a in args))
        raise TypeError(f"not a term: {t!r}")

    def go(g: Formula, shadowed: bool) -> Formula:
        match g:
            case Top() | Bottom():
                return g
            case Pred(name, args):
                return Pred(name, tuple(go_term(a, shadowed) for a in args))
            case Not(body):
                return Not(go(body, shadowed))
            case And(l, r):
                return And(go(l, shadowed), go(r, shadowed))
            case Or(l, r):
                return Or(go(l, shadowed), go(r, shadowed))
            case Imp(l, r):
                return Imp(go(l, shadowed), go(r, shadowed))
            case Iff(l, r):
                return Iff(go(l, shadowed), go(r, shadowed))
            case Forall(v, body):
                return Forall(v, go(body, shadowed or v == x))
            case Exists(v, body):
                return Exists(v, go(body, shadowed or v == x))
        raise TypeError(f"not a formula: {g!r}")

    return go(f, False)


# --- Alpha equivalence ---

def alpha_eq(f: Formula, g: Formula) -> bool:
    """Structural equality up to consistent renaming of bound variables."""
    return _alpha(f, g, {}, {}, 0)


def _alpha_term(s: Term, t: Term, env1: dict, env2: dict) -> bool:
    match s, t:
        case Var(a), Var(b):
            d1, d2 = env1.get(a), env2.get(b)
            if d1 is None and d2 is None:
                return a == b          # both free
            return d1 == d2            # both bound at the same depth
        case Const(a), Const(b):
            return a == b
        case App(fa, xs), App(fb, ys):
            return fa == fb and len(xs) == len(ys) and all(
                _alpha_term(a, b, env1, env2) for a, b in zip(xs, ys))
    return False


def _alpha(f: Formula, g: Formula, env1: dict, env2: dict, depth: int) -> bool:
    if type(f) is not type(g):
        return False
    match f, g:
        case (Top(), Top()) | (Bottom(), Bottom()):
            return True
        case Pred(n1, a1), Pred(n2, a2):
            return n1 == n2 and len(a1) == len(a2) and all(
                _alpha_term(s, t, env1, env2) for s, t in zip(a1, a2))
        case Not(b1), Not(b2):
            return _alpha(b1, b2, env1, env2, depth)
        case (And(l1, r1), And(l2, r2)) | (Or(l1, r1), Or(l2, r2)) | \
             (Imp(l1, r1), Imp(l2, r2)) | (Iff(l1, r1), Iff(l2, r2)):
            return _alpha(l1, l2, env1, env2, depth) and _alpha(r1, r2, env1, env2, depth)
        case (Forall(v1, b1), Forall(v2, b2)) | (Exists(v1, b1), Exists(v2, b2)):
            e1 = dict(env1)
            e2 = dict(env2)
            e1[v1] = depth
            e2[v2] = depth
            return _alpha(b1, b2, e1, e2, depth + 1)
    return False


# --- Signatures ---

@dataclass(frozen=True)
class Signature:
    """Symbol table inferred from a set of formulas.

    Predicate and function entries map names to arities; the three name sets
    are pairwise disjoint.
    """
    predicates: dict[str, int]
    functions: dict[str, int]
    constants: frozenset[str]

    def symbols(self) -> frozenset[str]:
        return frozenset(self.predicates) | frozenset(self.functions) | self.constants


def infer_signature(formulas: Iterable[Formula],
                    extra_constants: Iterable[str] = ()) -> Signature:
    """Collect the signature used by the given formulas.

    Raises SignatureError on malformed names, arity clashes, or a name used
    as more than one kind of symbol.
    """
    preds: dict[str, int] = {}
    funcs: dict[str, int] = {}
    consts: set[str] = set()

    def note(kind: str, table: dict[str, int], name: str, arity: int) -> None:
        if not is_identifier(name) or is_variable_name(name):
            raise SignatureError(f"invalid {kind} name: {name!r}")
        old = table.setdefault(name, arity)
        if old != arity:
            raise SignatureError(f"{kind} {name} used with arities {old} and {arity}")

    def go_term(t: Term) -> None:
        match t:
            case Var(name):
                if not is_variable_name(name):
                    raise SignatureError(f"invalid variable name: {name!r}")
            case Const(name):
                if not is_identifier(name) or is_variable_name(name):
                    raise SignatureError(f"invalid constant name: {name!r}")
                consts.add(name)
            case App(fn, args):
                note("function", funcs, fn, len(args))
                for a in args:
                    go_term(a)

    def go(f: Formula) -> None:
        match f:
            case Top() | Bottom():
                pass
            case Pred(name, args):
                note("predicate", preds, name, len(args))
                for a in args:
                    go_term(a)
            case Not(body):
                go(body)
            case And(l, r) | Or(l, r) | Imp(l, r) | Iff(l, r):
                go(l)
                go(r)
            case Forall(v, body) | Exists(v, body):
                if not is_variable_name(v):
                    raise SignatureError(f"quantified variable must be u..z: {v!r}")
                go(body)
            case _:
                raise TypeError(f"not a formula: {f!r}")

    for f in formulas:
        go(f)
    for c in extra_constants:
        if not is_identifier(c) or is_variable_name(c):
            raise SignatureError(f"invalid constant name: {c!r}")
        consts.add(c)

    for name in consts:
        if name in preds or name in funcs:
            raise SignatureError(f"{name} used both as a constant and another symbol kind")
    for name in preds:
        if name in funcs:
            raise SignatureError(f"{name} used both as a predicate and a function")

    return Signature(predicates=preds, functions=funcs, constants=frozenset(consts))
