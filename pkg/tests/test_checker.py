"""Per-rule validator behavior, side conditions, and checker invariants."""

from fitchcheck.checker import CheckConfig, check_line, check_proof, fresh_constants
from fitchcheck.parser import parse_formula
from fitchcheck.proofdoc import parse_proof

STRICT = CheckConfig(strict=True)


def codes(report):
    return sorted({d.code for d in report.diagnostics if d.severity == "error"})


def warnings(report):
    return sorted({d.code for d in report.diagnostics if d.severity == "warning"})


def check(text, cfg=CheckConfig()):
    return check_proof(parse_proof(text), cfg)


def assert_accepted(text, cfg=CheckConfig()):
    report = check(text, cfg)
    assert report.accepted, [str(d) for d in report.diagnostics]
    return report


def assert_rejected(text, *expected_codes, cfg=CheckConfig()):
    report = check(text, cfg)
    assert not report.accepted
    assert codes(report) == sorted(expected_codes), [str(d) for d in report.diagnostics]
    return report


class TestPropositionalRules:
    def test_not_i(self):
        assert_accepted("1. P → ⊥ ; premise\n"
                        "2. | P ; assume\n3. | ⊥ ; →E 1, 2\n"
                        "4. ¬P ; ¬I 2-3\n")

    def test_not_i_needs_bottom(self):
        assert_rejected("1. P ; premise\n2. | Q ; assume\n3. | P ; Reit 1\n"
                        "4. ¬Q ; ¬I 2-3\n", "E_RULE_MISMATCH")

    def test_not_e(self):
        assert_accepted("1. ¬¬P ; premise\n2. P ; ¬E 1\n")

    def test_not_e_single_negation_rejected(self):
        assert_rejected("1. ¬P ; premise\n2. P ; ¬E 1\n", "E_RULE_MISMATCH")

    def test_and_i_multiple(self):
        assert_accepted("1. P ; premise\n2. Q ; premise\n3. R ; premise\n"
                        "4. P ∧ Q ∧ R ; ∧I 1, 2, 3\n")

    def test_and_i_order_matters(self):
        assert_rejected("1. P ; premise\n2. Q ; premise\n"
                        "3. Q ∧ P ; ∧I 1, 2\n", "E_RULE_MISMATCH")

    def test_and_i_nested_arguments(self):
        assert_accepted("1. P ∧ Q ; premise\n2. R ; premise\n"
                        "3. P ∧ Q ∧ R ; ∧I 1, 2\n")

    def test_and_e_flattened_view(self):
        assert_accepted("1. P ∧ Q ∧ R ; premise\n2. Q ; ∧E 1\n")

    def test_and_e_structural_chunk(self):
        assert_accepted("1. P ∧ Q ∧ R ; premise\n2. P ∧ Q ; ∧E 1\n")

    def test_and_e_reorder_rejected(self):
        assert_rejected("1. P ∧ Q ∧ R ; premise\n2. R ∧ P ; ∧E 1\n", "E_RULE_MISMATCH")

    def test_or_i_any_superset_disjunction(self):
        assert_accepted("1. Q ; premise\n2. P ∨ Q ∨ R ; ∨I 1\n")

    def test_or_i_not_a_disjunct(self):
        assert_rejected("1. Q ; premise\n2. P ∨ R ; ∨I 1\n", "E_RULE_MISMATCH")

    def test_or_e_implication_branches(self):
        assert_accepted("1. P ∨ Q ; premise\n2. P → S_0 ; premise\n"
                        "3. Q → S_0 ; premise\n4. S_0 ; ∨E 1, 2, 3\n")

    def test_or_e_subproof_branches(self):
        assert_accepted("1. P ∨ Q ; premise\n2. S_0 ; premise\n"
                        "3. | P ; assume\n4. | S_0 ; Reit 2\n"
                        "5. | Q ; assume\n6. | S_0 ; Reit 2\n"
                        "7. S_0 ; ∨E 1, 3-4, 5-6\n")

    def test_or_e_branch_count(self):
        assert_rejected("1. P ∨ Q ; premise\n2. P → R ; premise\n"
                        "3. R ; ∨E 1, 2\n", "E_BAD_CITATION")

    def test_or_e_branch_must_match_disjunct(self):
        assert_rejected("1. P ∨ Q ; premise\n2. P → R ; premise\n"
                        "3. P → R ; Reit 2\n4. R ; ∨E 1, 2, 3\n", "E_RULE_MISMATCH")

    def test_imp_i(self):
        assert_accepted("1. P ; premise\n2. | Q ; assume\n3. | P ; Reit 1\n"
                        "4. Q → P ; →I 2-3\n")

    def test_imp_i_wrong_consequent(self):
        assert_rejected("1. P ; premise\n2. Q ; premise\n"
                        "3. | R ; assume\n4. | P ; Reit 1\n"
                        "5. R → Q ; →I 3-4\n", "E_RULE_MISMATCH")

    def test_imp_e_both_citation_orders(self):
        assert_accepted("1. P → Q ; premise\n2. P ; premise\n3. Q ; →E 1, 2\n")
        assert_accepted("1. P → Q ; premise\n2. P ; premise\n3. Q ; →E 2, 1\n")

    def test_imp_e_consequent_mismatch(self):
        # the doctored mortality proof: conclusion altered to use the wrong term
        assert_rejected("1. ∀x (H(x) → M(x)) ; premise\n2. H(s) ; premise\n"
                        "3. H(s) → M(s) ; ∀E 1\n4. M(t_0) ; →E 3, 2\n",
                        "E_RULE_MISMATCH")

    def test_iff_i_lines(self):
        assert_accepted("1. P → Q ; premise\n2. Q → P ; premise\n"
                        "3. P ↔ Q ; ↔I 1, 2\n")

    def test_iff_i_subproofs(self):
        assert_accepted("1. P ; premise\n2. Q ; premise\n"
                        "3. | P ; assume\n4. | Q ; Reit 2\n"
                        "5. | Q ; assume\n6. | P ; Reit 1\n"
                        "7. P ↔ Q ; ↔I 3-4, 5-6\n")

    def test_iff_i_not_converse(self):
        assert_rejected("1. P → Q ; premise\n2. P → Q ; premise\n"
                        "3. P ↔ Q ; ↔I 1, 2\n", "E_RULE_MISMATCH")

    def test_iff_e_two_citations(self):
        assert_accepted("1. P ↔ Q ; premise\n2. P ; premise\n3. Q ; ↔E 1, 2\n")
        assert_accepted("1. P ↔ Q ; premise\n2. Q ; premise\n3. P ; ↔E 1, 2\n")

    def test_iff_e_single_citation_form(self):
        assert_accepted("1. P ↔ Q ; premise\n2. P → Q ; ↔E 1\n")
        assert_accepted("1. P ↔ Q ; premise\n2. Q → P ; ↔E 1\n")

    def test_bottom_i_either_order(self):
        assert_accepted("1. P ; premise\n2. ¬P ; premise\n3. ⊥ ; ⊥ 1, 2\n")
        assert_accepted("1. P ; premise\n2. ¬P ; premise\n3. ⊥ ; ⊥ 2, 1\n")

    def test_bottom_i_needs_contradiction(self):
        assert_rejected("1. P ; premise\n2. Q ; premise\n3. ⊥ ; ⊥ 1, 2\n",
                        "E_RULE_MISMATCH")

    def test_reit(self):
        assert_accepted("1. P ∧ Q ; premise\n2. P ∧ Q ; Reit 1\n")

    def test_reit_alpha_variant(self):
        assert_accepted("1. ∀x P(x) ; premise\n2. ∀y P(y) ; Reit 1\n")

    def test_reit_alpha_variant_rejected_without_alpha_matching(self):
        assert_rejected("1. ∀x P(x) ; premise\n2. ∀y P(y) ; Reit 1\n",
                        "E_RULE_MISMATCH", cfg=CheckConfig(alpha_matching=False))


class TestQuantifierRules:
    def test_forall_e_with_constant(self):
        assert_accepted("1. ∀x (Lion(x) → Milk(x)) ; premise\n2. Lion(Cat) ; premise\n"
                        "3. Lion(Cat) → Milk(Cat) ; ∀E 1\n4. Milk(Cat) ; →E 3, 2\n")

    def test_forall_e_with_function_term(self):
        assert_accepted("1. ∀x P(x) ; premise\n2. P(f(c)) ; ∀E 1\n")

    def test_forall_e_vacuous(self):
        assert_accepted("1. ∀x P ; premise\n2. P ; ∀E 1\n")

    def test_forall_e_mixed_instantiation_rejected(self):
        assert_rejected("1. ∀x R(x, x) ; premise\n2. R(a, b) ; ∀E 1\n",
                        "E_RULE_MISMATCH")

    def test_exists_i(self):
        assert_accepted("1. M(s) ; premise\n2. ∃x M(x) ; ∃I 1\n")

    def test_exists_i_partial_generalization(self):
        assert_accepted("1. R(a, a) ; premise\n2. ∃x R(x, a) ; ∃I 1\n")
        assert_accepted("1. R(a, a) ; premise\n2. ∃x R(x, x) ; ∃I 1\n")

    def test_exists_i_wrong_instance(self):
        assert_rejected("1. M(s) ; premise\n2. ∃x H(x) ; ∃I 1\n", "E_RULE_MISMATCH")

    def test_exists_e_direct_form(self):
        assert_accepted("1. ∃x M(x) ; premise\n2. M(c) ; ∃E 1\n3. ∃y M(y) ; ∃I 2\n")

    def test_exists_e_witness_must_be_constant(self):
        assert_rejected("1. ∃x M(x) ; premise\n2. M(f(c)) ; ∃E 1\n3. ⊤ ; Reit 2\n",
                        "E_RULE_MISMATCH")

    def test_forall_i_direct_accepted_when_constant_arbitrary(self):
        # instantiation constant never pinned down by premises
        assert_accepted("1. ∀x P(x) ; premise\n2. P(c) ; ∀E 1\n3. ∀y P(y) ; ∀I 2\n")

    def test_forall_i_direct_premise_constant_rejected(self):
        assert_rejected("1. ∀x P(x) ; premise\n2. P(c) ; premise\n"
                        "3. P(c) ; ∀E 1\n4. ∀y P(y) ; ∀I 3\n", "E_FRESHNESS")

    def test_forall_i_boxed(self):
        assert_accepted("1. ∀x P(x) ; premise\n2. | [c] ; box\n"
                        "3. | P(c) ; ∀E 1\n4. ∀y P(y) ; ∀I 2-3\n")

    def test_forall_i_boxed_constant_must_be_new(self):
        assert_rejected("1. P(c) ; premise\n2. | [c] ; box\n"
                        "3. | P(c) ; Reit 1\n4. ∀x P(x) ; ∀I 2-3\n", "E_FRESHNESS")

    def test_forall_i_conclusion_must_not_mention_constant(self):
        assert_rejected("1. ∀x R(x, x) ; premise\n2. R(c, c) ; ∀E 1\n"
                        "3. ∀y R(y, c) ; ∀I 2\n", "E_FRESHNESS")

    def test_forall_i_generalizing_into_binder_capture(self):
        assert_rejected("1. ∀y ∃x R(x, y) ; premise\n2. ∃x R(x, c) ; ∀E 1\n"
                        "3. ∀x ∃x R(x, x) ; ∀I 2\n", "E_NOT_FREE_FOR")

    def test_forall_i_vacuous(self):
        assert_accepted("1. P ; premise\n2. ∀x P ; ∀I 1\n")

    def test_forall_i_over_open_assumption_rejected(self):
        assert_rejected("1. | P(a) ; assume\n2. | ∀x P(x) ; ∀I 1\n"
                        "3. P(a) → ∀x P(x) ; →I 1-2\n", "E_FRESHNESS")

    def test_exists_then_forall_blocked(self):
        assert_rejected("1. ∃x P(x) ; premise\n2. P(c) ; ∃E 1\n3. ∀x P(x) ; ∀I 2\n",
                        "E_FRESHNESS")

    def test_boxed_witness_dependency_blocked(self):
        assert_rejected("1. ∀x ∃y R(x, y) ; premise\n2. | [c] ; box\n"
                        "3. | ∃y R(c, y) ; ∀E 1\n4. | R(c, d) ; ∃E 3\n"
                        "5. ∀x R(x, d) ; ∀I 2-4\n6. ∃y ∀x R(x, y) ; ∃I 5\n",
                        "E_FRESHNESS")

    def test_direct_witness_dependency_blocked(self):
        assert_rejected("1. ∀x ∃y R(x, y) ; premise\n2. ∃y R(a, y) ; ∀E 1\n"
                        "3. R(a, d) ; ∃E 2\n4. ∀x R(x, d) ; ∀I 3\n"
                        "5. ∃y ∀x R(x, y) ; ∃I 4\n", "E_FRESHNESS")

    def test_witness_before_box_allowed(self):
        assert_accepted("1. ∃x P(x) ; premise\n2. P(d) ; ∃E 1\n"
                        "3. | [c] ; box\n4. | P(d) ; Reit 2\n"
                        "5. | P(d) ∨ Q(c) ; ∨I 4\n"
                        "6. ∀x (P(d) ∨ Q(x)) ; ∀I 3-5\n"
                        "7. ∃y ∀x (P(y) ∨ Q(x)) ; ∃I 6\n")

    def test_forall_i_boxed_cannot_carry_assumption(self):
        assert_rejected("1. | [c] P(c) ; assume\n2. | P(c) ; Reit 1\n"
                        "3. ∀x P(x) ; ∀I 1-2\n", "E_RULE_MISMATCH")

    def test_boxed_subproof_not_citable_by_imp_i(self):
        assert_rejected("1. ∀x P(x) ; premise\n2. | [c] ; box\n3. | P(c) ; ∀E 1\n"
                        "4. ⊤ → P(c) ; →I 2-3\n", "E_RULE_MISMATCH")


class TestDerivedRules:
    def test_qn_all_four_directions(self):
        assert_accepted("1. ¬∀x P(x) ; premise\n2. ∃x ¬P(x) ; QN 1\n")
        assert_accepted("1. ∃x ¬P(x) ; premise\n2. ¬∀x P(x) ; QN 1\n")
        assert_accepted("1. ¬∃x P(x) ; premise\n2. ∀x ¬P(x) ; QN 1\n")
        assert_accepted("1. ∀x ¬P(x) ; premise\n2. ¬∃x P(x) ; QN 1\n")

    def test_qn_not_top_level(self):
        assert_rejected("1. ¬¬∀x P(x) ; premise\n2. ¬∃x ¬P(x) ; QN 1\n",
                        "E_RULE_MISMATCH")

    def test_neg_imp_both_directions(self):
        assert_accepted("1. ¬(P → Q) ; premise\n2. P ∧ ¬Q ; NegImp 1\n")
        assert_accepted("1. P ∧ ¬Q ; premise\n2. ¬(P → Q) ; NegImp 1\n")

    def test_neg_imp_shape(self):
        assert_rejected("1. ¬(P ∧ Q) ; premise\n2. P ∧ ¬Q ; NegImp 1\n",
                        "E_RULE_MISMATCH")

    def test_ip(self):
        assert_accepted("1. P ; premise\n2. | ¬P ; assume\n3. | ⊥ ; ⊥ 1, 2\n"
                        "4. P ; IP 2-3\n")

    def test_ip_assumption_must_negate_conclusion(self):
        assert_rejected("1. P ; premise\n2. | Q ; assume\n3. | P ; Reit 1\n"
                        "4. P ; IP 2-3\n", "E_RULE_MISMATCH")

    def test_strict_rejects_each_derived_rule(self):
        qn = "1. ¬∀x P(x) ; premise\n2. ∃x ¬P(x) ; QN 1\n"
        negimp = "1. ¬(P → Q) ; premise\n2. P ∧ ¬Q ; NegImp 1\n"
        ip = "1. P ; premise\n2. | ¬P ; assume\n3. | ⊥ ; ⊥ 1, 2\n4. P ; IP 2-3\n"
        for text in (qn, negimp, ip):
            assert_accepted(text)
            assert_rejected(text, "E_DERIVED_IN_STRICT", cfg=STRICT)


class TestRelabeling:
    RELABELED = ("1. P ; premise\n2. | ¬P ; assume\n3. | ⊥ ; ⊥ 1, 2\n"
                 "4. P ; ¬I 2-3\n")

    def test_default_mode_warns_and_accepts(self):
        report = assert_accepted(self.RELABELED)
        assert warnings(report) == ["W_RULE_RELABELED"]

    def test_strict_mode_rejects(self):
        assert_rejected(self.RELABELED, "E_DERIVED_IN_STRICT", cfg=STRICT)

    def test_double_negation_assumption_goes_to_ip(self):
        text = ("1. ¬P ; premise\n2. | ¬¬P ; assume\n3. | ⊥ ; ⊥ 2, 1\n"
                "4. ¬P ; ¬I 2-3\n")
        report = assert_accepted(text)
        assert warnings(report) == ["W_RULE_RELABELED"]


class TestCitations:
    def test_self_citation(self):
        assert_rejected("1. P ; premise\n2. P ; Reit 2\n", "E_BAD_CITATION")

    def test_missing_line(self):
        assert_rejected("1. P ; premise\n2. P ; Reit 7\n", "E_BAD_CITATION")

    def test_range_that_is_not_a_subproof(self):
        assert_rejected("1. P ; premise\n2. Q ; premise\n3. | R ; assume\n"
                        "4. | P ; Reit 1\n5. R → P ; →I 2-4\n", "E_BAD_CITATION")

    def test_single_where_subproof_needed(self):
        assert_rejected("1. P ; premise\n2. Q → P ; →I 1\n", "E_BAD_CITATION")

    def test_subproof_where_single_needed(self):
        assert_rejected("1. P ; premise\n2. | Q ; assume\n3. | P ; Reit 1\n"
                        "4. P ; Reit 2-3\n", "E_BAD_CITATION")

    def test_unknown_rule_diagnostic_via_model(self):
        # unreachable from text (the parser refuses), but JSON input can carry it
        from fitchcheck.proofdoc import (Citation, Justification, ProofDocument,
                                         ProofLine)
        from fitchcheck.formulas import Pred
        doc = ProofDocument(name="", lines=(
            ProofLine(1, 0, "premise", Pred("P")),
            ProofLine(2, 0, "derived", Pred("P"),
                      Justification("Hunch", (Citation(1),))),
        ))
        report = check_proof(doc)
        assert codes(report) == ["E_UNKNOWN_RULE"]


class TestReportShape:
    def test_proved_is_last_line(self):
        report = assert_accepted("1. P ; premise\n2. Q ; premise\n3. P ∧ Q ; ∧I 1, 2\n")
        assert report.proved == parse_formula("P & Q")

    def test_premises_only_document_accepted(self):
        report = assert_accepted("goal: P\n1. P ; premise\n")
        assert report.proved == parse_formula("P")

    def test_goal_mismatch_warns(self):
        report = assert_accepted("goal: Q\n1. P ; premise\n")
        assert warnings(report) == ["W_GOAL_MISMATCH"]

    def test_all_diagnostics_reported_not_just_first(self):
        text = ("1. P ; premise\n2. Q ; Reit 1\n3. R ; Reit 7\n")
        report = check(text)
        assert codes(report) == ["E_BAD_CITATION", "E_RULE_MISMATCH"]

    def test_determinism(self):
        text = ("1. ∃x P(x) ; premise\n2. P(c) ; ∃E 1\n3. ∀x P(x) ; ∀I 2\n")
        a = check(text)
        b = check(text)
        assert a == b


class TestLocality:
    def test_appending_lines_leaves_line_checks_alone(self):
        base = ("1. P → Q ; premise\n2. P ; premise\n3. Q ; →E 1, 2\n")
        extended = base + "4. Q ∨ P ; ∨I 3\n5. P ∧ Q ; ∧I 2, 3\n"
        doc_a, doc_b = parse_proof(base), parse_proof(extended)
        assert check_line(doc_a, 3) == check_line(doc_b, 3)

    def test_check_line_agrees_with_check_proof(self):
        text = ("1. ∀x (H(x) → M(x)) ; premise\n2. H(s) ; premise\n"
                "3. H(s) → M(s) ; ∀E 1\n4. M(s) ; →E 3, 2\n5. ∃x M(x) ; ∃I 4\n")
        doc = parse_proof(text)
        per_line = [d for n in range(1, 6) for d in check_line(doc, n)]
        assert per_line == list(check_proof(doc).diagnostics)


class TestStrictMonotonicity:
    def test_strict_acceptance_implies_default_acceptance(self):
        texts = [
            "1. ∀x (T(x) → P(x)) ; premise\n2. T(a) → P(a) ; ∀E 1\n",
            "1. P ; premise\n2. Q ; premise\n3. P ∧ Q ; ∧I 1, 2\n",
            "1. P → Q ; premise\n2. P ; premise\n3. Q ; →E 1, 2\n",
        ]
        for text in texts:
            assert_accepted(text, cfg=STRICT)
            assert_accepted(text)


class TestFreshConstants:
    def test_before_line_one(self):
        doc = parse_proof("1. ∀x (H(x) → M(x)) ; premise\n2. H(s) ; premise\n"
                          "3. H(s) → M(s) ; ∀E 1\n")
        candidates = {"c", "d", "s", "H", "M"}
        assert fresh_constants(doc, 0, candidates) == {"c", "d"}

    def test_witness_removed_once_introduced(self):
        doc = parse_proof("1. ∃x P(x) ; premise\n2. P(c) ; ∃E 1\n3. ∃y P(y) ; ∃I 2\n")
        assert "c" in fresh_constants(doc, 1, {"c"})
        assert "c" not in fresh_constants(doc, 2, {"c"})

    def test_used_constants_excluded(self):
        doc = parse_proof("1. P(a) ∧ P(b) ; premise\n2. P(a) ; ∧E 1\n")
        assert fresh_constants(doc, 2, {"a", "b", "e"}) == {"e"}
