"""Formula text parser.

Accepts both the Unicode connective spellings (¬ ∧ ∨ → ↔ ∀ ∃ ⊤ ⊥) and the
pure-ASCII ones (~ or not, &, |, ->, <->, forall, exists, true, false).
Precedence, tightest first: negation and quantifier prefixes, then ∧, ∨,
→, ↔.  ∧ and ∨ associate left, → and ↔ associate right; a quantifier's
scope is the longest prefix-level formula to its right, so
``forall x P(x) & Q`` reads as ``(∀x P(x)) ∧ Q``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formulas import (
    App, Bottom, Const, Exists, Forall, Formula, Iff, Imp, And, Not, Or,
    Pred, Term, Top, Var, is_variable_name,
)


class ParseError(Exception):
    """Syntax error, with a byte offset into the input and the expected tokens."""

    def __init__(self, message: str, text: str, pos: int, expected: tuple[str, ...] = ()):
        self.offset = len(text[:pos].encode("utf-8"))
        self.position = pos              # character offset, for editors
        self.expected = tuple(expected)
        self.message = message
        detail = f"{message} at offset {self.offset}"
        if expected:
            detail += f" (expected {', '.join(expected)})"
        super().__init__(detail)


_KEYWORDS = {"not": "NOT", "forall": "FORALL", "exists": "EXISTS",
             "true": "TOP", "false": "BOTTOM"}

_SYMBOLS = [  # longest first
    ("<->", "IFF"), ("->", "IMP"),
    ("↔", "IFF"), ("→", "IMP"),
    ("∧", "AND"), ("&", "AND"),
    ("∨", "OR"), ("|", "OR"),
    ("¬", "NOT"), ("~", "NOT"),
    ("∀", "FORALL"), ("∃", "EXISTS"),
    ("⊤", "TOP"), ("⊥", "BOTTOM"),
    ("(", "LPAREN"), (")", "RPAREN"), (",", "COMMA"),
]


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        for sym, kind in _SYMBOLS:
            if text.startswith(sym, i):
                out.append(_Token(kind, sym, i))
                i += len(sym)
                break
        else:
            if ch.isalpha():
                j = i + 1
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                word = text[i:j]
                out.append(_Token(_KEYWORDS.get(word, "IDENT"), word, i))
                i = j
            else:
                raise ParseError(f"unexpected character {ch!r}", text, i)
    out.append(_Token("EOF", "", n))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"unexpected {tok.text!r}" if tok.kind != "EOF"
                             else "unexpected end of input",
                             self.text, tok.pos, (what,))
        return self.next()

    # precedence ladder, loosest to tightest

    def formula(self) -> Formula:
        left = self.imp()
        if self.peek().kind == "IFF":
            self.next()
            return Iff(left, self.formula())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek().kind == "IMP":
            self.next()
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek().kind == "OR":
            self.next()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek().kind == "AND":
            self.next()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "NOT":
            self.next()
            return Not(self.unary())
        if tok.kind in ("FORALL", "EXISTS"):
            self.next()
            var = self.expect("IDENT", "variable")
            if not is_variable_name(var.text):
                raise ParseError(f"quantified variable must be u..z, got {var.text!r}",
                                 self.text, var.pos, ("variable",))
            body = self.unary()
            return Forall(var.text, body) if tok.kind == "FORALL" else Exists(var.text, body)
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "TOP":
            self.next()
            return Top()
        if tok.kind == "BOTTOM":
            self.next()
            return Bottom()
        if tok.kind == "LPAREN":
            self.next()
            inner = self.formula()
            self.expect("RPAREN", "')'")
            return inner
        if tok.kind == "IDENT":
            self.next()
            if is_variable_name(tok.text):
                raise ParseError(f"variable {tok.text!r} cannot stand alone as a formula",
                                 self.text, tok.pos, ("predicate",))
            args: tuple[Term, ...] = ()
            if self.peek().kind == "LPAREN":
                args = self.arg_list()
            return Pred(tok.text, args)
        raise ParseError(f"unexpected {tok.text!r}" if tok.kind != "EOF"
                         else "unexpected end of input",
                         self.text, tok.pos,
                         ("formula",))

    def arg_list(self) -> tuple[Term, ...]:
        self.expect("LPAREN", "'('")
        args = [self.term()]
        while self.peek().kind == "COMMA":
            self.next()
            args.append(self.term())
        self.expect("RPAREN", "')'")
        return tuple(args)

    def term(self) -> Term:
        tok = self.expect("IDENT", "term")
        if self.peek().kind == "LPAREN":
            if is_variable_name(tok.text):
                raise ParseError(f"variable {tok.text!r} cannot be applied as a function",
                                 self.text, tok.pos, ("function name",))
            return App(tok.text, self.arg_list())
        if is_variable_name(tok.text):
            return Var(tok.text)
        return Const(tok.text)


def parse_formula(text: str) -> Formula:
    """Parse a formula from text; raises ParseError on bad input."""
    p = _Parser(text)
    f = p.formula()
    tok = p.peek()
    if tok.kind != "EOF":
        raise ParseError(f"trailing input {tok.text!r}", text, tok.pos, ("end of input",))
    return f


def parse_term(text: str) -> Term:
    """Parse a single closed or open term (mostly useful in tests and tools)."""
    p = _Parser(text)
    t = p.term()
    tok = p.peek()
    if tok.kind != "EOF":
        raise ParseError(f"trailing input {tok.text!r}", text, tok.pos, ("end of input",))
    return t
