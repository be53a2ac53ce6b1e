"""CLI tests for the verify-paper command."""

from __future__ import annotations

import json
from typing import Any

import pytest
from typer.testing import CliRunner

from elemcomm.algebra.elemgroup import GroupWord
from elemcomm.cli import app
from elemcomm.rewrite import lemmas

runner = CliRunner()


def test_verify_paper_json() -> None:
    result = runner.invoke(app, ["verify-paper", "--spot-checks", "2", "--json"])

    assert result.exit_code == 0, result.output
    reports = json.loads(result.stdout)
    assert len(reports) == 17
    assert all(r["passed"] for r in reports)
    assert {"free", "zmod:8"} <= {w for r in reports for w in r["worlds"]}


def test_verify_paper_text() -> None:
    result = runner.invoke(app, ["verify-paper", "--spot-checks", "0"])

    assert result.exit_code == 0, result.output
    assert "PASS lemma4.chain" in result.output
    assert "all 17 identities hold" in result.output


def test_verify_paper_reports_failures(monkeypatch: pytest.MonkeyPatch) -> None:
    original = lemmas.lemma3_commutator_formula

    def flipped(
        kind: lemmas.FormulaKind, n: int, i: int, j: int, h: int, *params: Any
    ) -> GroupWord:
        a, b, c = params
        return original(kind, n, i, j, h, a, b, -c)

    monkeypatch.setattr(lemmas, "lemma3_commutator_formula", flipped)

    result = runner.invoke(app, ["verify-paper", "--spot-checks", "0"])

    assert result.exit_code == 1
    assert "FAIL lemma3.formula-ih" in result.output
    assert "identities failed" in result.output


def test_negative_spot_checks_rejected() -> None:
    result = runner.invoke(app, ["verify-paper", "--spot-checks", "-1"])

    assert result.exit_code == 2


def test_verbose_logs_to_stderr() -> None:
    result = runner.invoke(app, ["-v", "verify-paper", "--spot-checks", "0"])

    assert result.exit_code == 0, result.output
    assert "identities.summary" in result.output


def test_verify_identities_alias() -> None:
    result = runner.invoke(app, ["verify-identities", "--spot-checks", "0"])

    assert result.exit_code == 0, result.output
    assert "all 17 identities hold" in result.output


def test_alias_is_hidden_from_help() -> None:
    result = runner.invoke(app, ["--help"])

    assert result.exit_code == 0
    assert "verify-paper" in result.output
    assert "verify-identities" not in result.output
