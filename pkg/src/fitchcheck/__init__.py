"""Fitch-style natural deduction proof checker for first-order logic.

The pieces: a formula parser and printer, a proof document model with a
plain-text format, per-rule validators, and a brute-force finite-model
engine that hunts for countermodels.
"""

from .formulas import (
    And, App, Bottom, CaptureError, Const, Exists, Forall, Formula, Iff, Imp,
    Not, Or, Pred, Signature, SignatureError, Term, Top, Var, alpha_eq,
    constants_of, free_vars, infer_signature, is_free_for, is_sentence,
    substitute,
)
from .parser import ParseError, parse_formula, parse_term
from .printer import format_formula, format_term
from .proofdoc import (
    Citation, Diagnostic, Justification, ProofDocument, ProofLine,
    ProofParseError, accessible, format_proof, parse_proof,
)
from .checker import (
    CheckConfig, CheckReport, check_line, check_proof, fresh_constants,
)
from .semantics import (
    Countermodel, ResourceError, Structure, ValidUpTo, Verdict, entails,
    enumerate_structures, evaluate, find_countermodel,
)

__version__ = "0.1.0"
