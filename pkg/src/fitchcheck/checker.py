"""Per-rule validation of proof documents.

Every derived line is checked against its cited rule: citation accessibility,
formula shape up to alpha-equivalence, and the quantifier side conditions.
Diagnostics are data; nothing raises on a bad proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .formulas import (
    And, Bottom, CaptureError, Const, Exists, Forall, Formula, Iff, Imp, Not,
    Or, Pred, Term, Top, Var, alpha_eq, constants_of, flatten_and, flatten_or,
    infer_signature, replace_constant, substitute,
)
from .proofdoc import (
    BOXED_CONSTANT, DERIVED, PREMISE, DERIVED_RULES,
    Citation, Diagnostic, ProofDocument, ProofLine, scope_paths, subproof_spans,
)


@dataclass(frozen=True)
class CheckConfig:
    strict: bool = False            # reject the derived rules QN, NegImp, IP
    alpha_matching: bool = True     # compare formulas up to bound-variable renaming


@dataclass(frozen=True)
class CheckReport:
    diagnostics: tuple[Diagnostic, ...]
    accepted: bool
    proved: Optional[Formula] = None


# --- Instantiation matching ---
#
# match_instantiation(body, x, target) decides whether target looks like
# body[t/x] for a single term t, walking both formulas in parallel.  The
# outcome distinguishes a clean match from one that would only work by
# capturing a bound variable of the target (the classic ∀x∃y R(x,y) ⊢
# ∃y R(y,y) mistake).

@dataclass(frozen=True)
class MatchResult:
    kind: str                       # "term" | "vacuous" | "capture" | "fail"
    term: Optional[Term] = None


def match_instantiation(body: Formula, x: str, target: Formula,
                        alpha: bool = True) -> MatchResult:
    collected: list[tuple[Term, bool]] = []

    def go_term(bt: Term, tt: Term, env_l: dict, env_r: dict) -> bool:
        match bt:
            case Var(v):
                if v in env_l:
                    return isinstance(tt, Var) and env_r.get(tt.name) == env_l[v] \
                        and (alpha or tt.name == v)
                if v == x:
                    captured = any(w in env_r for w in _vars_in(tt))
                    collected.append((tt, captured))
                    return True
                return isinstance(tt, Var) and tt.name == v and tt.name not in env_r
            case Const(c):
                return isinstance(tt, Const) and tt.name == c
            case _:
                return (isinstance(tt, type(bt)) and tt.fn == bt.fn
                        and len(tt.args) == len(bt.args)
                        and all(go_term(a, b, env_l, env_r)
                                for a, b in zip(bt.args, tt.args)))

    def go(bf: Formula, tf: Formula, env_l: dict, env_r: dict, depth: int) -> bool:
        if type(bf) is not type(tf):
            return False
        match bf, tf:
            case (Top(), Top()) | (Bottom(), Bottom()):
                return True
            case Pred(n1, a1), Pred(n2, a2):
                return n1 == n2 and len(a1) == len(a2) and all(
                    go_term(s, t, env_l, env_r) for s, t in zip(a1, a2))
            case Not(b1), Not(b2):
                return go(b1, b2, env_l, env_r, depth)
            case (And(l1, r1), And(l2, r2)) | (Or(l1, r1), Or(l2, r2)) | \
                 (Imp(l1, r1), Imp(l2, r2)) | (Iff(l1, r1), Iff(l2, r2)):
                return go(l1, l2, env_l, env_r, depth) and go(r1, r2, env_l, env_r, depth)
            case (Forall(v1, b1), Forall(v2, b2)) | (Exists(v1, b1), Exists(v2, b2)):
                if not alpha and v1 != v2:
                    return False
                e1 = dict(env_l)
                e2 = dict(env_r)
                e1[v1] = depth
                e2[v2] = depth
                return go(b1, b2, e1, e2, depth + 1)
        return False

    if not go(body, target, {}, {}, 0):
        return MatchResult("fail")
    if not collected:
        return MatchResult("vacuous")
    first = collected[0][0]
    if any(t != first for t, _ in collected):
        return MatchResult("fail")
    if any(cap for _, cap in collected):
        return MatchResult("capture", first)
    return MatchResult("term", first)


def _vars_in(t: Term) -> frozenset[str]:
    match t:
        case Var(name):
            return frozenset({name})
        case Const(_):
            return frozenset()
        case _:
            return frozenset().union(*( _vars_in(a) for a in t.args))


# --- Checking context ---

@dataclass
class _Ctx:
    doc: ProofDocument
    cfg: CheckConfig
    paths: tuple[tuple[int, ...], ...]
    spans: frozenset[tuple[int, int]]
    witnesses: dict[str, int]       # ∃E-introduced constants (lines before the current one)
    first_occ: dict[str, int]

    def eq(self, f: Formula, g: Formula) -> bool:
        return alpha_eq(f, g) if self.cfg.alpha_matching else f == g


def _first_occurrences(doc: ProofDocument) -> dict[str, int]:
    occ: dict[str, int] = {}
    for ln in doc.lines:
        names = set(constants_of(ln.formula)) if ln.formula is not None else set()
        if ln.boxed_constant:
            names.add(ln.boxed_constant)
        for c in names:
            occ.setdefault(c, ln.number)
    return occ


def existse_witness(doc: ProofDocument, ln: ProofLine,
                    alpha: bool = True) -> Optional[str]:
    """The constant a successful ∃E line introduces, if one can be identified."""
    j = ln.justification
    if j is None or j.rule != "ExistsE" or len(j.cited) != 1 or j.cited[0].is_range:
        return None
    n = j.cited[0].start
    if not (1 <= n < ln.number):
        return None
    cited = doc.line(n).formula
    if not isinstance(cited, Exists) or ln.formula is None:
        return None
    m = match_instantiation(cited.body, cited.var, ln.formula, alpha=alpha)
    if m.kind == "term" and isinstance(m.term, Const):
        return m.term.name
    return None


def _witnesses_before(doc: ProofDocument, upto: int, alpha: bool) -> dict[str, int]:
    out: dict[str, int] = {}
    for ln in doc.lines:
        if ln.number >= upto:
            break
        c = existse_witness(doc, ln, alpha=alpha)
        if c is not None and c not in out:
            out[c] = ln.number
    return out


def _context(doc: ProofDocument, upto: int, cfg: CheckConfig) -> _Ctx:
    return _Ctx(doc=doc, cfg=cfg, paths=scope_paths(doc),
                spans=frozenset(subproof_spans(doc)),
                witnesses=_witnesses_before(doc, upto, cfg.alpha_matching),
                first_occ=_first_occurrences(doc))


def _err(ln: int, code: str, msg: str, related: tuple[int, ...] = ()) -> Diagnostic:
    return Diagnostic(line=ln, code=code, severity="error", message=msg, related=related)


def _warn(ln: int, code: str, msg: str, related: tuple[int, ...] = ()) -> Diagnostic:
    return Diagnostic(line=ln, code=code, severity="warning", message=msg, related=related)


# --- Citation resolution ---

@dataclass(frozen=True)
class _Subproof:
    start: int
    end: int
    opener: ProofLine
    last: ProofLine

    @property
    def boxed(self) -> Optional[str]:
        return self.opener.boxed_constant

    @property
    def assumption(self) -> Optional[Formula]:
        return self.opener.formula

    @property
    def conclusion(self) -> Optional[Formula]:
        return self.last.formula

    @property
    def ends_clean(self) -> bool:
        return self.last.depth == self.opener.depth


def _is_prefix(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return b[:len(a)] == a


def _single(ctx: _Ctx, at: ProofLine, cit: Citation):
    if cit.is_range:
        return None, [_err(at.number, "E_BAD_CITATION",
                           f"citation {cit} is a subproof; a single line is needed here")]
    n = cit.start
    if not 1 <= n <= len(ctx.doc.lines):
        return None, [_err(at.number, "E_BAD_CITATION", f"no line numbered {n}")]
    if n >= at.number:
        return None, [_err(at.number, "E_BAD_CITATION",
                           f"citation of line {n} must refer to an earlier line")]
    if not _is_prefix(ctx.paths[n - 1], ctx.paths[at.number - 1]):
        return None, [_err(at.number, "E_SCOPE",
                           f"line {n} sits inside a closed subproof and cannot be cited",
                           related=(n,))]
    cited = ctx.doc.line(n)
    if cited.formula is None:
        return None, [_err(at.number, "E_BAD_CITATION",
                           f"line {n} introduces a constant but has no formula",
                           related=(n,))]
    return cited, []


def _span(ctx: _Ctx, at: ProofLine, cit: Citation):
    if not cit.is_range:
        return None, [_err(at.number, "E_BAD_CITATION",
                           f"citation {cit} is a single line; a subproof range is needed here")]
    key = (cit.start, cit.end)
    if key not in ctx.spans:
        return None, [_err(at.number, "E_BAD_CITATION", f"{cit} is not a subproof")]
    if cit.end >= at.number:
        return None, [_err(at.number, "E_BAD_CITATION",
                           f"subproof {cit} is not closed before this line")]
    if not _is_prefix(ctx.paths[cit.start - 1][:-1], ctx.paths[at.number - 1]):
        return None, [_err(at.number, "E_SCOPE",
                           f"subproof {cit} is nested inside a closed subproof",
                           related=(cit.start,))]
    sp = _Subproof(cit.start, cit.end, ctx.doc.line(cit.start), ctx.doc.line(cit.end))
    return sp, []


def _plain_subproof(at: ProofLine, sp: _Subproof, rule: str) -> list[Diagnostic]:
    """Conditions shared by every rule that cites a subproof, except ∀I."""
    out = []
    if sp.boxed:
        out.append(_err(at.number, "E_RULE_MISMATCH",
                        f"subproof {sp.start}-{sp.end} introduces the constant "
                        f"{sp.boxed}; only ∀I may cite it", related=(sp.start,)))
    if not sp.ends_clean:
        out.append(_err(at.number, "E_RULE_MISMATCH",
                        f"subproof {sp.start}-{sp.end} ends inside a nested subproof, "
                        f"so {rule} cannot use its last line", related=(sp.end,)))
    return out


# --- Validators, one per rule ---

def _v_not_i(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 1:
        return [_err(ln.number, "E_BAD_CITATION", "¬I cites exactly one subproof")]
    sp, diags = _span(ctx, ln, j.cited[0])
    if diags:
        return diags
    concl = ln.formula
    proper = (isinstance(concl, Not) and sp.assumption is not None
              and ctx.eq(sp.assumption, concl.body))
    if proper:
        diags = _plain_subproof(ln, sp, "¬I")
        if not diags and not isinstance(sp.conclusion, Bottom):
            diags.append(_err(ln.number, "E_RULE_MISMATCH",
                              "the subproof cited by ¬I must end in ⊥", related=(sp.end,)))
        return diags
    if isinstance(sp.assumption, Not) and ctx.eq(sp.assumption.body, concl):
        # Written ¬I but concludes the positive: that is the derived rule IP.
        if ctx.cfg.strict:
            return [_err(ln.number, "E_DERIVED_IN_STRICT",
                         "¬I concluding a positive sentence is the derived rule IP, "
                         "rejected in strict mode")]
        diags = [_warn(ln.number, "W_RULE_RELABELED",
                       "¬I concluding a positive sentence; checked as the derived rule IP")]
        diags += _ip_shape(ctx, ln, sp)
        return diags
    return [_err(ln.number, "E_RULE_MISMATCH",
                 "¬I concludes the negation of the cited subproof's assumption")]


def _ip_shape(ctx: _Ctx, ln: ProofLine, sp: _Subproof) -> list[Diagnostic]:
    diags = _plain_subproof(ln, sp, "IP")
    if diags:
        return diags
    if not (isinstance(sp.assumption, Not) and ctx.eq(sp.assumption.body, ln.formula)):
        return [_err(ln.number, "E_RULE_MISMATCH",
                     "IP needs a subproof assuming the negation of the conclusion")]
    if not isinstance(sp.conclusion, Bottom):
        return [_err(ln.number, "E_RULE_MISMATCH",
                     "the subproof cited by IP must end in ⊥", related=(sp.end,))]
    return []


def _v_ip(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 1:
        return [_err(ln.number, "E_BAD_CITATION", "IP cites exactly one subproof")]
    sp, diags = _span(ctx, ln, j.cited[0])
    if diags:
        return diags
    return _ip_shape(ctx, ln, sp)


def _v_not_e(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 1:
        return [_err(ln.number, "E_BAD_CITATION", "¬E cites exactly one line")]
    cited, diags = _single(ctx, ln, j.cited[0])
    if diags:
        return diags
    f = cited.formula
    if isinstance(f, Not) and isinstance(f.body, Not) and ctx.eq(f.body.body, ln.formula):
        return []
    return [_err(ln.number, "E_RULE_MISMATCH",
                 "¬E removes a double negation: the cited line must be ¬¬ of this one")]


def _flatten_eq(ctx: _Ctx, xs: list[Formula], ys: list[Formula]) -> bool:
    return len(xs) == len(ys) and all(ctx.eq(a, b) for a, b in zip(xs, ys))


def _contiguous(ctx: _Ctx, needle: list[Formula], hay: list[Formula]) -> bool:
    for i in range(len(hay) - len(needle) + 1):
        if _flatten_eq(ctx, needle, hay[i:i + len(needle)]):
            return True
    return False


def _v_and_i(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) < 2:
        return [_err(ln.number, "E_BAD_CITATION", "∧I cites at least two lines")]
    parts: list[Formula] = []
    for cit in j.cited:
        cited, diags = _single(ctx, ln, cit)
        if diags:
            return diags
        parts.extend(flatten_and(cited.formula))
    if _flatten_eq(ctx, flatten_and(ln.formula), parts):
        return []
    return [_err(ln.number, "E_RULE_MISMATCH",
                 "∧I concludes the conjunction of the cited lines, in citation order")]


def _v_and_e(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 1:
        return [_err(ln.number, "E_BAD_CITATION", "∧E cites exactly one line")]
    cited, diags = _single(ctx, ln, j.cited[0])
    if diags:
        return diags
    if not isinstance(cited.formula, And):
        return [_err(ln.number, "E_RULE_MISMATCH", "∧E needs a conjunction to pick from")]
    if _contiguous(ctx, flatten_and(ln.formula), flatten_and(cited.formula)):
        return []
    return [_err(ln.number, "E_RULE_MISMATCH",
                 "this line is not a conjunct of the cited conjunction")]


def _v_or_i(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 1:
        return [_err(ln.number, "E_BAD_CITATION", "∨I cites exactly one line")]
    cited, diags = _single(ctx, ln, j.cited[0])
    if diags:
        return diags
    if not isinstance(ln.formula, Or):
        return [_err(ln.number, "E_RULE_MISMATCH", "∨I concludes a disjunction")]
    if _contiguous(ctx, flatten_or(cited.formula), flatten_or(ln.formula)):
        return []
    return [_err(ln.number, "E_RULE_MISMATCH",
                 "the cited line must appear among this disjunction's disjuncts")]


def _branch_implication(ctx: _Ctx, ln: ProofLine, cit: Citation):
    """An ∨E/↔I branch: either a line φ→ψ or a subproof assume φ … ψ."""
    if cit.is_range:
        sp, diags = _span(ctx, ln, cit)
        if diags:
            return None, diags
        diags = _plain_subproof(ln, sp, "the branch")
        if diags:
            return None, diags
        if sp.assumption is None or sp.conclusion is None:
            return None, [_err(ln.number, "E_RULE_MISMATCH",
                               f"subproof {cit} cannot serve as a branch")]
        return (sp.assumption, sp.conclusion), []
    cited, diags = _single(ctx, ln, cit)
    if diags:
        return None, diags
    if not isinstance(cited.formula, Imp):
        return None, [_err(ln.number, "E_RULE_MISMATCH",
                           f"line {cit} must be an implication to serve as a branch",
                           related=(cit.start,))]
    return (cited.formula.left, cited.formula.right), []


def _v_or_e(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) < 2:
        return [_err(ln.number, "E_BAD_CITATION",
                     "∨E cites a disjunction plus one branch per disjunct")]
    cited, diags = _single(ctx, ln, j.cited[0])
    if diags:
        return diags
    if not isinstance(cited.formula, Or):
        return [_err(ln.number, "E_RULE_MISMATCH", "∨E eliminates a disjunction")]
    disjuncts = flatten_or(cited.formula)
    branches = j.cited[1:]
    if len(branches) != len(disjuncts):
        return [_err(ln.number, "E_BAD_CITATION",
                     f"∨E over {len(disjuncts)} disjuncts needs {len(disjuncts)} "
                     f"branch citations, got {len(branches)}")]
    for i, (phi, cit) in enumerate(zip(disjuncts, branches), start=1):
        pair, diags = _branch_implication(ctx, ln, cit)
        if diags:
            return diags
        ante, result = pair
        if not ctx.eq(ante, phi):
            return [_err(ln.number, "E_RULE_MISMATCH",
                         f"branch {i} must start from disjunct {i} of the cited disjunction")]
        if not ctx.eq(result, ln.formula):
            return [_err(ln.number, "E_RULE_MISMATCH",
                         f"branch {i} does not end in this line's formula")]
    return []


def _v_imp_i(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 1:
        return [_err(ln.number, "E_BAD_CITATION", "→I cites exactly one subproof")]
    sp, diags = _span(ctx, ln, j.cited[0])
    if diags:
        return diags
    diags = _plain_subproof(ln, sp, "→I")
    if diags:
        return diags
    if sp.assumption is None or sp.conclusion is None:
        return [_err(ln.number, "E_RULE_MISMATCH", "→I needs a subproof with an assumption")]
    if isinstance(ln.formula, Imp) and ctx.eq(ln.formula.left, sp.assumption) \
            and ctx.eq(ln.formula.right, sp.conclusion):
        return []
    return [_err(ln.number, "E_RULE_MISMATCH",
                 "→I concludes assumption → last line of the cited subproof")]


def _v_imp_e(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 2:
        return [_err(ln.number, "E_BAD_CITATION", "→E cites an implication and its antecedent")]
    a, diags = _single(ctx, ln, j.cited[0])
    if diags:
        return diags
    b, diags = _single(ctx, ln, j.cited[1])
    if diags:
        return diags
    for imp, ante in ((a.formula, b.formula), (b.formula, a.formula)):
        if isinstance(imp, Imp) and ctx.eq(imp.left, ante) and ctx.eq(imp.right, ln.formula):
            return []
    return [_err(ln.number, "E_RULE_MISMATCH",
                 "→E needs φ→ψ and φ, and concludes ψ")]


def _v_iff_i(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 2:
        return [_err(ln.number, "E_BAD_CITATION",
                     "↔I cites the two converse implications (lines or subproofs)")]
    pair1, diags = _branch_implication(ctx, ln, j.cited[0])
    if diags:
        return diags
    pair2, diags = _branch_implication(ctx, ln, j.cited[1])
    if diags:
        return diags
    (a1, b1), (a2, b2) = pair1, pair2
    if not (ctx.eq(a2, b1) and ctx.eq(b2, a1)):
        return [_err(ln.number, "E_RULE_MISMATCH", "↔I needs converse implications")]
    if isinstance(ln.formula, Iff) and (
            (ctx.eq(ln.formula.left, a1) and ctx.eq(ln.formula.right, b1)) or
            (ctx.eq(ln.formula.left, b1) and ctx.eq(ln.formula.right, a1))):
        return []
    return [_err(ln.number, "E_RULE_MISMATCH",
                 "↔I concludes the biconditional of the cited implications")]


def _v_iff_e(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) == 1:
        cited, diags = _single(ctx, ln, j.cited[0])
        if diags:
            return diags
        f = cited.formula
        if not isinstance(f, Iff):
            return [_err(ln.number, "E_RULE_MISMATCH", "↔E eliminates a biconditional")]
        if isinstance(ln.formula, Imp) and (
                (ctx.eq(ln.formula.left, f.left) and ctx.eq(ln.formula.right, f.right)) or
                (ctx.eq(ln.formula.left, f.right) and ctx.eq(ln.formula.right, f.left))):
            return []
        return [_err(ln.number, "E_RULE_MISMATCH",
                     "↔E with one citation concludes one of the two implications")]
    if len(j.cited) == 2:
        a, diags = _single(ctx, ln, j.cited[0])
        if diags:
            return diags
        b, diags = _single(ctx, ln, j.cited[1])
        if diags:
            return diags
        for iff, side in ((a.formula, b.formula), (b.formula, a.formula)):
            if isinstance(iff, Iff):
                if ctx.eq(iff.left, side) and ctx.eq(iff.right, ln.formula):
                    return []
                if ctx.eq(iff.right, side) and ctx.eq(iff.left, ln.formula):
                    return []
        return [_err(ln.number, "E_RULE_MISMATCH",
                     "↔E needs φ↔ψ and one side, and concludes the other side")]
    return [_err(ln.number, "E_BAD_CITATION", "↔E cites one or two lines")]


def _open_assumptions(ctx: _Ctx, at: ProofLine) -> list[Formula]:
    out = []
    for opener in ctx.paths[at.number - 1]:
        f = ctx.doc.line(opener).formula
        if f is not None:
            out.append(f)
    return out


def _generalization_candidates(ctx: _Ctx, gamma: Formula, x: str, body: Formula):
    """Constants c with gamma == body[c→x]; flags whether only capture blocked one."""
    candidates = []
    capture_only = False
    for c in sorted(constants_of(gamma)):
        try:
            replaced = replace_constant(gamma, c, x)
        except CaptureError:
            capture_only = True
            continue
        if ctx.eq(replaced, body):
            candidates.append(c)
    return candidates, capture_only


def _partial_generalization(ctx: _Ctx, gamma: Formula, x: str,
                            body: Formula) -> Optional[str]:
    """A constant generalized at only some of its occurrences, if that is the
    reason matching failed; such a constant still occurs in the conclusion."""
    for c in sorted(constants_of(gamma) & constants_of(body)):
        if ctx.eq(substitute(body, x, Const(c)), gamma):
            return c
    return None


def _witness_after_check(ctx: _Ctx, ln: ProofLine, gamma: Formula,
                         intro_line: int) -> list[Diagnostic]:
    # A generalized formula may not mention a witness that ∃E produced after
    # the generalization constant was introduced; that witness depends on it.
    for e in sorted(constants_of(gamma)):
        w = ctx.witnesses.get(e)
        if w is not None and w > intro_line:
            return [_err(ln.number, "E_FRESHNESS",
                         f"{e} was introduced by ∃E at line {w}, after the constant "
                         f"being generalized (line {intro_line}); ∀I is unsound here",
                         related=(w, intro_line))]
    return []


def _v_forall_i(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 1:
        return [_err(ln.number, "E_BAD_CITATION", "∀I cites one line or one boxed subproof")]
    if not isinstance(ln.formula, Forall):
        return [_err(ln.number, "E_RULE_MISMATCH", "∀I concludes a universal formula")]
    x, body = ln.formula.var, ln.formula.body

    if j.cited[0].is_range:
        sp, diags = _span(ctx, ln, j.cited[0])
        if diags:
            return diags
        if not sp.boxed:
            return [_err(ln.number, "E_RULE_MISMATCH",
                         "∀I over a subproof needs a [c] boxed-constant opener",
                         related=(sp.start,))]
        if sp.assumption is not None:
            return [_err(ln.number, "E_RULE_MISMATCH",
                         "∀I cannot discharge an assumption; use →I first",
                         related=(sp.start,))]
        if not sp.ends_clean or sp.conclusion is None:
            return [_err(ln.number, "E_RULE_MISMATCH",
                         f"boxed subproof {sp.start}-{sp.end} must end with a formula "
                         "at its own level", related=(sp.end,))]
        c = sp.boxed
        try:
            replaced = replace_constant(sp.conclusion, c, x)
        except CaptureError as e:
            return [_err(ln.number, "E_NOT_FREE_FOR", str(e))]
        if not ctx.eq(replaced, body):
            if _partial_generalization(ctx, sp.conclusion, x, body) == c:
                return [_err(ln.number, "E_FRESHNESS",
                             f"the boxed constant {c} must not occur in the conclusion; "
                             f"every occurrence has to be generalized")]
            return [_err(ln.number, "E_RULE_MISMATCH",
                         f"the conclusion must be the subproof's last line with every "
                         f"{c} generalized to {x}")]
        return _witness_after_check(ctx, ln, sp.conclusion, sp.start)

    cited, diags = _single(ctx, ln, j.cited[0])
    if diags:
        return diags
    gamma = cited.formula
    if ctx.eq(gamma, body):
        return []                   # vacuous generalization: x does not occur
    candidates, capture_only = _generalization_candidates(ctx, gamma, x, body)
    if not candidates:
        if capture_only:
            return [_err(ln.number, "E_NOT_FREE_FOR",
                         f"generalizing to {x} is blocked by a binder on {x} in the cited line")]
        partial = _partial_generalization(ctx, gamma, x, body)
        if partial is not None:
            return [_err(ln.number, "E_FRESHNESS",
                         f"the generalized constant {partial} must not occur in the "
                         f"conclusion; every occurrence has to be generalized")]
        return [_err(ln.number, "E_RULE_MISMATCH",
                     "the cited line is not this conclusion with a single constant "
                     "in place of the bound variable")]
    premise_consts = frozenset().union(frozenset(), *(constants_of(p)
                                                      for p in ctx.doc.premises))
    opens = _open_assumptions(ctx, ln)
    failures = []
    for c in candidates:
        if c in premise_consts:
            failures.append(f"{c} occurs in a premise")
            continue
        if any(c in constants_of(a) for a in opens):
            failures.append(f"{c} occurs in an assumption still open here")
            continue
        if c in ctx.witnesses:
            failures.append(f"{c} was introduced by ∃E at line {ctx.witnesses[c]}")
            continue
        after = _witness_after_check(ctx, ln, gamma, ctx.first_occ.get(c, ln.number))
        if after:
            failures.append(after[0].message)
            continue
        return []
    return [_err(ln.number, "E_FRESHNESS",
                 "∀I needs an arbitrary constant: " + "; ".join(failures))]


def _v_forall_e(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 1:
        return [_err(ln.number, "E_BAD_CITATION", "∀E cites exactly one line")]
    cited, diags = _single(ctx, ln, j.cited[0])
    if diags:
        return diags
    f = cited.formula
    if not isinstance(f, Forall):
        return [_err(ln.number, "E_RULE_MISMATCH", "∀E instantiates a universal formula")]
    m = match_instantiation(f.body, f.var, ln.formula, alpha=ctx.cfg.alpha_matching)
    if m.kind in ("term", "vacuous"):
        return []
    if m.kind == "capture":
        return [_err(ln.number, "E_NOT_FREE_FOR",
                     f"instantiating {f.var} this way would capture a bound variable; "
                     "the term is not free for it")]
    return [_err(ln.number, "E_RULE_MISMATCH",
                 "this line is not an instance of the cited universal formula")]


def _v_exists_i(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 1:
        return [_err(ln.number, "E_BAD_CITATION", "∃I cites exactly one line")]
    cited, diags = _single(ctx, ln, j.cited[0])
    if diags:
        return diags
    if not isinstance(ln.formula, Exists):
        return [_err(ln.number, "E_RULE_MISMATCH", "∃I concludes an existential formula")]
    m = match_instantiation(ln.formula.body, ln.formula.var, cited.formula,
                            alpha=ctx.cfg.alpha_matching)
    if m.kind in ("term", "vacuous"):
        return []
    if m.kind == "capture":
        return [_err(ln.number, "E_NOT_FREE_FOR",
                     "the witness term is not free for the bound variable here")]
    return [_err(ln.number, "E_RULE_MISMATCH",
                 "the cited line is not an instance of this existential formula")]


def _v_exists_e(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 1:
        return [_err(ln.number, "E_BAD_CITATION", "∃E cites exactly one line")]
    cited, diags = _single(ctx, ln, j.cited[0])
    if diags:
        return diags
    f = cited.formula
    if not isinstance(f, Exists):
        return [_err(ln.number, "E_RULE_MISMATCH", "∃E instantiates an existential formula")]
    m = match_instantiation(f.body, f.var, ln.formula, alpha=ctx.cfg.alpha_matching)
    if m.kind == "vacuous":
        return []
    if m.kind == "capture":
        return [_err(ln.number, "E_NOT_FREE_FOR",
                     "the witness term is not free for the bound variable here")]
    if m.kind == "fail" or not isinstance(m.term, Const):
        return [_err(ln.number, "E_RULE_MISMATCH",
                     "∃E concludes the cited formula's body with a fresh constant "
                     "for the bound variable")]
    c = m.term.name
    first = ctx.first_occ.get(c, ln.number)
    if first < ln.number:
        return [_err(ln.number, "E_FRESHNESS",
                     f"∃E witness {c} must be new, but it already occurs at line {first}",
                     related=(first,))]
    return []


def _v_reit(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 1:
        return [_err(ln.number, "E_BAD_CITATION", "Reit cites exactly one line")]
    cited, diags = _single(ctx, ln, j.cited[0])
    if diags:
        return diags
    if ctx.eq(cited.formula, ln.formula):
        return []
    return [_err(ln.number, "E_RULE_MISMATCH", "Reit must repeat the cited formula exactly")]


def _v_bottom_i(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 2:
        return [_err(ln.number, "E_BAD_CITATION", "⊥ cites a formula and its negation")]
    a, diags = _single(ctx, ln, j.cited[0])
    if diags:
        return diags
    b, diags = _single(ctx, ln, j.cited[1])
    if diags:
        return diags
    if not isinstance(ln.formula, Bottom):
        return [_err(ln.number, "E_RULE_MISMATCH", "this rule concludes ⊥")]
    fa, fb = a.formula, b.formula
    if (isinstance(fb, Not) and ctx.eq(fb.body, fa)) or \
            (isinstance(fa, Not) and ctx.eq(fa.body, fb)):
        return []
    return [_err(ln.number, "E_RULE_MISMATCH",
                 "⊥ needs a pair of contradictory lines")]


def _qn_duals(f: Formula) -> list[Formula]:
    out = []
    if isinstance(f, Not) and isinstance(f.body, Forall):
        out.append(Exists(f.body.var, Not(f.body.body)))
    if isinstance(f, Not) and isinstance(f.body, Exists):
        out.append(Forall(f.body.var, Not(f.body.body)))
    if isinstance(f, Forall) and isinstance(f.body, Not):
        out.append(Not(Exists(f.var, f.body.body)))
    if isinstance(f, Exists) and isinstance(f.body, Not):
        out.append(Not(Forall(f.var, f.body.body)))
    return out


def _v_qn(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 1:
        return [_err(ln.number, "E_BAD_CITATION", "QN cites exactly one line")]
    cited, diags = _single(ctx, ln, j.cited[0])
    if diags:
        return diags
    if any(ctx.eq(d, ln.formula) for d in _qn_duals(cited.formula)):
        return []
    return [_err(ln.number, "E_RULE_MISMATCH",
                 "QN swaps ¬∀/∃¬ or ¬∃/∀¬ at the top of the formula")]


def _v_neg_imp(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if len(j.cited) != 1:
        return [_err(ln.number, "E_BAD_CITATION", "NegImp cites exactly one line")]
    cited, diags = _single(ctx, ln, j.cited[0])
    if diags:
        return diags
    f, g = cited.formula, ln.formula
    forward = (isinstance(f, Not) and isinstance(f.body, Imp)
               and ctx.eq(g, And(f.body.left, Not(f.body.right))))
    backward = (isinstance(g, Not) and isinstance(g.body, Imp)
                and ctx.eq(f, And(g.body.left, Not(g.body.right))))
    if forward or backward:
        return []
    return [_err(ln.number, "E_RULE_MISMATCH",
                 "NegImp rewrites between ¬(φ→ψ) and φ∧¬ψ at the top of the formula")]


_VALIDATORS: dict[str, Callable[[_Ctx, ProofLine], list[Diagnostic]]] = {
    "NotI": _v_not_i, "NotE": _v_not_e,
    "AndI": _v_and_i, "AndE": _v_and_e,
    "OrI": _v_or_i, "OrE": _v_or_e,
    "ImpI": _v_imp_i, "ImpE": _v_imp_e,
    "IffI": _v_iff_i, "IffE": _v_iff_e,
    "ForallI": _v_forall_i, "ForallE": _v_forall_e,
    "ExistsI": _v_exists_i, "ExistsE": _v_exists_e,
    "Reit": _v_reit, "BottomI": _v_bottom_i,
    "IP": _v_ip, "QN": _v_qn, "NegImp": _v_neg_imp,
}


def _check_derived(ctx: _Ctx, ln: ProofLine) -> list[Diagnostic]:
    j = ln.justification
    if j is None or j.rule not in _VALIDATORS:
        name = j.rule if j else "(none)"
        return [_err(ln.number, "E_UNKNOWN_RULE", f"{name!r} is not a rule")]
    diags: list[Diagnostic] = []
    if ctx.cfg.strict and j.rule in DERIVED_RULES:
        diags.append(_err(ln.number, "E_DERIVED_IN_STRICT",
                          f"{j.rule} is a derived rule, rejected in strict mode"))
    diags.extend(_VALIDATORS[j.rule](ctx, ln))
    return diags


def check_line(doc: ProofDocument, line, cfg: CheckConfig = CheckConfig()) -> list[Diagnostic]:
    """Validate one derived line; depends only on lines up to its number."""
    ln = doc.line(line) if isinstance(line, int) else line
    if ln.kind != DERIVED:
        return []
    return _check_derived(_context(doc, ln.number, cfg), ln)


def check_proof(doc: ProofDocument, cfg: CheckConfig = CheckConfig()) -> CheckReport:
    """Validate every line and aggregate the diagnostics; never stops early."""
    diags: list[Diagnostic] = []
    for ln in doc.lines:
        if ln.kind == BOXED_CONSTANT:
            c = ln.boxed_constant
            first = _first_occurrences(doc).get(c, ln.number)
            if first < ln.number:
                diags.append(_err(ln.number, "E_FRESHNESS",
                                  f"boxed constant {c} must be new, but it already "
                                  f"occurs at line {first}", related=(first,)))
        if ln.kind == DERIVED:
            diags.extend(_check_derived(_context(doc, ln.number, cfg), ln))

    if doc.lines:
        final = doc.lines[-1]
        if final.formula is not None:
            mentioned = constants_of(final.formula)
            for c, w in _witnesses_before(doc, len(doc.lines) + 1,
                                          cfg.alpha_matching).items():
                if c in mentioned:
                    diags.append(_err(final.number, "E_FRESHNESS",
                                      f"the conclusion mentions {c}, the witness ∃E "
                                      f"introduced at line {w}; it must stay local",
                                      related=(w,)))

    diags.sort(key=lambda d: d.line)
    accepted = not any(d.severity == "error" for d in diags)
    proved = None
    if accepted and doc.lines and doc.lines[-1].formula is not None:
        proved = doc.lines[-1].formula
    if doc.declared_goal is not None and proved is not None:
        eq = alpha_eq if cfg.alpha_matching else (lambda f, g: f == g)
        if not eq(doc.declared_goal, proved):
            diags.append(_warn(doc.lines[-1].number, "W_GOAL_MISMATCH",
                               "the last line does not match the declared goal"))
    return CheckReport(diagnostics=tuple(diags), accepted=accepted, proved=proved)


def used_symbol_names(doc: ProofDocument, upto: int) -> frozenset[str]:
    """Predicate, function, and constant names in the premises or lines 1..upto."""
    names: set[str] = set()
    for ln in doc.lines:
        if ln.kind != PREMISE and ln.number > upto:
            continue
        if ln.formula is not None:
            names |= infer_signature([ln.formula]).symbols()
        if ln.boxed_constant:
            names.add(ln.boxed_constant)
    return frozenset(names)


def fresh_constants(doc: ProofDocument, upto: int,
                    candidates) -> frozenset[str]:
    """The candidate names that appear nowhere in the premises or lines 1..upto."""
    return frozenset(candidates) - used_symbol_names(doc, upto)
