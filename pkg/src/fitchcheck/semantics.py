"""Finite first-order structures, Tarskian evaluation, and brute-force
entailment over every structure up to a domain-size bound.

``ValidUpTo(n)`` is *not* a validity proof; first-order logic has no finite
model property.  It only says no countermodel exists with at most n elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .formulas import (
    And, App, Bottom, Const, Exists, Forall, Formula, Iff, Imp, Not, Or,
    Pred, Signature, SignatureError, Term, Top, Var, free_vars, infer_signature,
)

DEFAULT_MAX_STRUCTURES = 10_000_000


class ResourceError(Exception):
    """The structure space exceeds the configured cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} structures to enumerate exceeds the cap of {cap}")
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class Structure:
    """A finite interpretation; the domain is 0..domain_size-1."""
    domain_size: int
    const_interp: dict[str, int] = field(default_factory=dict)
    func_interp: dict[str, dict[tuple[int, ...], int]] = field(default_factory=dict)
    pred_interp: dict[str, frozenset[tuple[int, ...]]] = field(default_factory=dict)


Assignment = dict[str, int]


@dataclass(frozen=True)
class ValidUpTo:
    n: int


@dataclass(frozen=True)
class Countermodel:
    structure: Structure


Verdict = Union[ValidUpTo, Countermodel]


def _eval_term(s: Structure, a: Assignment, t: Term) -> int:
    match t:
        case Var(name):
            if name not in a:
                raise SignatureError(f"variable {name} has no assignment")
            return a[name]
        case Const(name):
            if name not in s.const_interp:
                raise SignatureError(f"constant {name} is not interpreted")
            return s.const_interp[name]
        case App(fn, args):
            if fn not in s.func_interp:
                raise SignatureError(f"function {fn} is not interpreted")
            key = tuple(_eval_term(s, a, x) for x in args)
            return s.func_interp[fn][key]
    raise TypeError(f"not a term: {t!r}")


def evaluate(s: Structure, a: Assignment, f: Formula) -> bool:
    """Standard Tarskian truth value of f in s under assignment a."""
    match f:
        case Top():
            return True
        case Bottom():
            return False
        case Pred(name, args):
            if name not in s.pred_interp:
                raise SignatureError(f"predicate {name} is not interpreted")
            return tuple(_eval_term(s, a, x) for x in args) in s.pred_interp[name]
        case Not(body):
            return not evaluate(s, a, body)
        case And(l, r):
            return evaluate(s, a, l) and evaluate(s, a, r)
        case Or(l, r):
            return evaluate(s, a, l) or evaluate(s, a, r)
        case Imp(l, r):
            return (not evaluate(s, a, l)) or evaluate(s, a, r)
        case Iff(l, r):
            return evaluate(s, a, l) == evaluate(s, a, r)
        case Forall(v, body):
            return all(evaluate(s, {**a, v: d}, body) for d in range(s.domain_size))
        case Exists(v, body):
            return any(evaluate(s, {**a, v: d}, body) for d in range(s.domain_size))
    raise TypeError(f"not a formula: {f!r}")


def count_structures(sig: Signature, n: int) -> int:
    """Closed-form size of the structure space over a domain of n elements."""
    count = n ** len(sig.constants)
    for arity in sig.predicates.values():
        count *= 2 ** (n ** arity)
    for arity in sig.functions.values():
        count *= n ** (n ** arity)
    return count


def enumerate_structures(sig: Signature, n: int,
                         cap: int = DEFAULT_MAX_STRUCTURES) -> Iterator[Structure]:
    """Every structure over domain 0..n-1, exactly once, in a fixed order.

    Interpretation slots are filled predicates first, then functions, then
    constants, each set in lexical name order; the later slots vary fastest,
    so the constants tick over like the last wheel of an odometer.  Raises
    ResourceError before yielding anything if the space exceeds the cap.
    """
    if n < 1:
        raise ValueError("domain size must be at least 1")
    count = count_structures(sig, n)
    if count > cap:
        raise ResourceError(count, cap)

    pred_names = sorted(sig.predicates)
    func_names = sorted(sig.functions)
    const_names = sorted(sig.constants)
    pred_tuples = {p: list(itertools.product(range(n), repeat=sig.predicates[p]))
                   for p in pred_names}
    func_tuples = {f: list(itertools.product(range(n), repeat=sig.functions[f]))
                   for f in func_names}

    def generate() -> Iterator[Structure]:
        pred_iters = [itertools.product((False, True), repeat=len(pred_tuples[p]))
                      for p in pred_names]
        func_iters = [itertools.product(range(n), repeat=len(func_tuples[f]))
                      for f in func_names]
        const_iters = [range(n) for _ in const_names]
        for combo in itertools.product(*pred_iters, *func_iters, *const_iters):
            preds = {}
            for i, p in enumerate(pred_names):
                members = combo[i]
                preds[p] = frozenset(t for t, m in zip(pred_tuples[p], members) if m)
            funcs = {}
            for i, f in enumerate(func_names):
                values = combo[len(pred_names) + i]
                funcs[f] = dict(zip(func_tuples[f], values))
            consts = {c: combo[len(pred_names) + len(func_names) + i]
                      for i, c in enumerate(const_names)}
            yield Structure(domain_size=n, const_interp=consts,
                            func_interp=funcs, pred_interp=preds)

    return generate()


def entails(premises: list[Formula], conclusion: Formula, max_n: int,
            cap: int = DEFAULT_MAX_STRUCTURES) -> Verdict:
    """Scan all structures of size 1..max_n for one satisfying every premise
    and falsifying the conclusion; report the first found, else ValidUpTo."""
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    for f in list(premises) + [conclusion]:
        if free_vars(f):
            raise ValueError(f"entailment is over sentences; free variables in {f!r}")
    sig = infer_signature(list(premises) + [conclusion])
    total = sum(count_structures(sig, n) for n in range(1, max_n + 1))
    if total > cap:
        raise ResourceError(total, cap)
    for n in range(1, max_n + 1):
        for s in enumerate_structures(sig, n, cap=cap):
            if all(evaluate(s, {}, p) for p in premises) and not evaluate(s, {}, conclusion):
                _verify_countermodel(s, premises, conclusion)
                return Countermodel(s)
    return ValidUpTo(max_n)


def _verify_countermodel(s: Structure, premises: list[Formula], conclusion: Formula) -> None:
    # Self-check, always on: a countermodel must satisfy every premise and
    # falsify the conclusion, or the evaluator is broken.
    ok = all(evaluate(s, {}, p) for p in premises) and not evaluate(s, {}, conclusion)
    if not ok:
        raise AssertionError("internal error: candidate countermodel failed re-evaluation")


def find_countermodel(premises: list[Formula], conclusion: Formula, max_n: int,
                      cap: int = DEFAULT_MAX_STRUCTURES) -> Optional[Structure]:
    verdict = entails(premises, conclusion, max_n, cap=cap)
    return verdict.structure if isinstance(verdict, Countermodel) else None
