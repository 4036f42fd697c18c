"""CLI behavior: exit codes, output forms, idempotent formatting."""

import json

import pytest

from fitchcheck.cli import main
from fitchcheck.corpus import example_text


def run(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as e:
        code = e.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def corpus_file(tmp_path):
    def write(example_id):
        path = tmp_path / f"{example_id}.ndp"
        path.write_text(example_text(example_id), encoding="utf-8")
        return str(path)
    return write


class TestCheck:
    def test_accepted_exits_zero(self, corpus_file, capsys):
        code, out, _ = run(["check", corpus_file("socrates_direct")], capsys)
        assert code == 0
        assert "accepted" in out

    def test_rejected_exits_one(self, corpus_file, capsys):
        code, out, _ = run(["check", corpus_file("cats_indirect_literal")], capsys)
        assert code == 1
        assert "E_BAD_CITATION" in out and "E_RULE_MISMATCH" in out

    def test_parse_error_exits_two(self, tmp_path, capsys):
        path = tmp_path / "bad.ndp"
        path.write_text("1. ⊤ ; TopI\n", encoding="utf-8")
        code, _, err = run(["check", str(path)], capsys)
        assert code == 2
        assert "not a rule" in err

    def test_missing_file_exits_three(self, capsys):
        code, _, err = run(["check", "does-not-exist.ndp"], capsys)
        assert code == 3

    def test_strict_flag(self, corpus_file, capsys):
        path = corpus_file("socrates_indirect_literal")
        assert run(["check", path], capsys)[0] == 0
        assert run(["check", "--strict", path], capsys)[0] == 1

    def test_json_report(self, corpus_file, capsys):
        code, out, _ = run(["check", "--json", corpus_file("trees_direct")], capsys)
        assert code == 0
        body = json.loads(out)
        assert body["version"] == "v1"
        assert body["report"]["accepted"] is True
        assert body["report"]["proved"] == "∀x (T(x) → L(x))"

    def test_max_domain_soundness_pass(self, corpus_file, capsys):
        code, out, _ = run(["check", "--max-domain", "3",
                            corpus_file("socrates_direct")], capsys)
        assert code == 0
        assert "no countermodel" in out

    def test_max_domain_json_includes_verdict(self, corpus_file, capsys):
        code, out, _ = run(["check", "--json", "--max-domain", "2",
                            corpus_file("lion_derivation")], capsys)
        body = json.loads(out)
        assert body["verdict"] == {"kind": "valid_up_to", "n": 2}


class TestCountermodel:
    def test_affirming_the_consequent(self, capsys):
        code, out, _ = run(["countermodel",
                            "--premise", "forall x (H(x) -> M(x))",
                            "--premise", "M(s)",
                            "--conclusion", "H(s)"], capsys)
        assert code == 0
        assert "countermodel" in out
        assert "domain: {0}" in out

    def test_valid_argument(self, capsys):
        code, out, _ = run(["countermodel", "--premise", "P(c)",
                            "--conclusion", "P(c)"], capsys)
        assert code == 0
        assert "no countermodel with at most 3 elements" in out

    def test_parse_error_exits_two(self, capsys):
        code, _, err = run(["countermodel", "--conclusion", "P("], capsys)
        assert code == 2

    def test_oversized_signature_exits_four(self, capsys, monkeypatch):
        monkeypatch.setenv("ND_MAX_STRUCTURES", "10")
        code, _, err = run(["countermodel", "--premise", "R(a, b, c, d)",
                            "--conclusion", "false"], capsys)
        assert code == 4
        assert "exceeds the cap" in err

    def test_json_verdict(self, capsys):
        code, out, _ = run(["countermodel", "--premise", "exists x P(x)",
                            "--conclusion", "P(c)", "--json"], capsys)
        body = json.loads(out)
        assert body["verdict"]["kind"] == "countermodel"


class TestFmt:
    def test_idempotent_on_corpus(self, corpus_file, capsys, tmp_path):
        for example in ("socrates_indirect", "trees_indirect", "cats_direct"):
            path = corpus_file(example)
            _, once, _ = run(["fmt", path], capsys)
            second = tmp_path / "second.ndp"
            second.write_text(once, encoding="utf-8")
            _, twice, _ = run(["fmt", str(second)], capsys)
            assert once == twice

    def test_malformed_exits_two(self, tmp_path, capsys):
        path = tmp_path / "bad.ndp"
        path.write_text("1. P(x ; premise\n", encoding="utf-8")
        code, _, _ = run(["fmt", str(path)], capsys)
        assert code == 2

    def test_json_document(self, corpus_file, capsys):
        code, out, _ = run(["fmt", "--json", corpus_file("lion_derivation")], capsys)
        body = json.loads(out)
        assert body["document"]["name"] == "lion_derivation"
        assert len(body["document"]["lines"]) == 4


def test_examples_listing(capsys):
    code, out, _ = run(["examples"], capsys)
    assert code == 0
    assert "socrates_direct" in out
