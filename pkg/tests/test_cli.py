"""
Test the command line front end
"""

import json
from collections.abc import Iterable
from pathlib import Path

import pytest
from click.testing import CliRunner

from app.cli import cli
from app.models.verify import SuiteName
from app.services import verify
from app.services.report import Report


def test_nilcoxeter_table(runner: CliRunner):
    result = runner.invoke(cli, ["nilcoxeter", "--max-m", "3"])
    assert result.exit_code == 0, result.output
    assert "N_3: dim 6" in result.output


def test_nilcoxeter_tsv(runner: CliRunner):
    result = runner.invoke(cli, ["nilcoxeter", "--max-m", "2", "--format", "tsv"])
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "m\tdimension\thomology"
    assert len(result.output.splitlines()) == 4


def test_strands_dimensions(runner: CliRunner):
    result = runner.invoke(cli, ["strands", "--n", "2", "--format", "json"])
    assert result.exit_code == 0
    assert json.loads(result.output)["dimensions"] == {"0": 1, "1": 3, "2": 1}


def test_verify_pass(runner: CliRunner):
    result = runner.invoke(cli, ["verify", "--suite", "nilcoxeter", "--max-m", "3"])
    assert result.exit_code == 0, result.output
    assert result.output.startswith("nilcoxeter: PASS")


def test_verify_failure_exit_code(runner: CliRunner, monkeypatch: pytest.MonkeyPatch):
    def failing(params: verify.Params) -> Iterable[tuple[str, Report]]:
        report = Report(suite="broken")
        report.check("always", False, "forced")
        yield "", report

    monkeypatch.setitem(verify.REGISTRY, SuiteName.NILCOXETER, verify.SuiteEntry("broken", failing))
    result = runner.invoke(cli, ["verify", "--suite", "nilcoxeter"])
    assert result.exit_code == 1
    assert "FAIL" in result.output
    assert "always: forced" in result.output
    assert "replay: cornered verify --suite nilcoxeter" in result.output


def test_verify_usage_errors(runner: CliRunner):
    assert runner.invoke(cli, ["verify", "--suite", "grid", "--n", "99"]).exit_code == 2
    assert runner.invoke(cli, ["verify", "--suite", "unknown"]).exit_code == 2
    assert runner.invoke(cli, ["verify", "--suite", "grid", "--n", "-1"]).exit_code == 2


def test_verify_is_deterministic(runner: CliRunner):
    args = ["verify", "--suite", "gradings", "--n", "2", "--seed", "4", "--format", "json"]
    first, second = runner.invoke(cli, args), runner.invoke(cli, args)
    assert first.exit_code == 0, first.output
    assert first.output == second.output
    assert json.loads(first.output)["params"]["seed"] == 4


def test_verify_on_grid_file(runner: CliRunner, grid3_file: Path):
    result = runner.invoke(cli, ["verify", "--suite", "cpa", "--input", str(grid3_file), "--format", "tsv"])
    assert result.exit_code == 0, result.output
    assert result.output.splitlines()[1].endswith("\t0\tTrue")


def test_homology_command(runner: CliRunner, grid2_file: Path):
    result = runner.invoke(cli, ["homology", "--input", str(grid2_file)])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0] == "alexander\tmaslov\tdimension"
    assert len(lines) == 9


def test_homology_needs_a_readable_grid(runner: CliRunner, tmp_path: Path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "x": [1, 1], "o": [1, 2]}', encoding="utf-8")
    assert runner.invoke(cli, ["homology", "--input", str(bad)]).exit_code == 2
    assert runner.invoke(cli, ["homology", "--input", str(tmp_path / "missing.json")]).exit_code == 2


def test_grid_and_slice(runner: CliRunner, grid3_file: Path):
    result = runner.invoke(cli, ["grid", "--input", str(grid3_file), "--format", "tsv"])
    assert result.exit_code == 0
    assert len(result.output.splitlines()) == 7
    result = runner.invoke(cli, ["slice", "--input", str(grid3_file), "--cut-k", "1", "--cut-kp", "1"])
    assert result.exit_code == 0, result.output
    assert "AA: 2 partial matchings" in result.output
    assert "AA basis: 3" in result.output


def test_slice_rejects_bad_cut(runner: CliRunner, grid3_file: Path):
    result = runner.invoke(cli, ["slice", "--input", str(grid3_file), "--cut-k", "5", "--cut-kp", "1"])
    assert result.exit_code == 2


def test_render_word(runner: CliRunner):
    result = runner.invoke(cli, ["render", "--kind", "nilcoxeter", "--n", "4", "--word", "1,3,2,1"])
    assert result.exit_code == 0, result.output
    assert result.output.count("X") == 4
    assert runner.invoke(cli, ["render"]).exit_code == 2
    assert runner.invoke(cli, ["render", "--kind", "nilcoxeter", "--word", "1,a"]).exit_code == 2


def test_matched_default(runner: CliRunner):
    result = runner.invoke(cli, ["matched"])
    assert result.exit_code == 0, result.output
    assert "genus 2" in result.output
    assert "surgery components: 1" in result.output


def test_demo(runner: CliRunner):
    result = runner.invoke(cli, ["demo"])
    assert result.exit_code == 0, result.output
    assert "C(6):" in result.output
    assert "through 1 empty rectangle(s)" in result.output
