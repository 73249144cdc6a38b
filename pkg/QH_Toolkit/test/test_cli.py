"""
Command line surface: exit codes, reports and machine output.
"""

import orjson
import pytest
from click.testing import CliRunner

from highest_weight_cli import cli


@pytest.fixture
def runner():
    return CliRunner()


def machine(runner, *args):
    result = runner.invoke(cli, ["--format", "machine", *args])
    return result, orjson.loads(result.stdout)


def test_check_hw_passes_on_a2(runner):
    result = runner.invoke(cli, ["check-hw", "a2"])
    assert result.exit_code == 0, result.output
    assert result.stdout.startswith("check-hw: true")


def test_check_hw_reports_st1_for_dual_numbers(runner):
    result, report = machine(runner, "check-hw", "dual_numbers")
    assert result.exit_code == 1
    assert report["verdict"] is False
    assert report["failing_clause"] == "st1"
    assert report["per_weight"]["1"]["end_dim"] == 2


def test_check_hw_reports_st2_prime_for_exm(runner):
    result, report = machine(runner, "check-hw", "exm_strictness")
    assert result.exit_code == 1
    assert report["failing_clause"] == "st2'"
    first = report["per_weight"]["1"]
    assert first["st2"] is True and first["st2_prime"] is False
    assert first["filtration"]["factors"] == ["3", "1"]
    assert report["per_weight"]["2"]["st2_prime"] is True


def test_machine_output_is_deterministic(runner):
    first = runner.invoke(cli, ["--format", "machine", "check-hw", "incidence4"])
    second = runner.invoke(cli, ["--format", "machine", "check-hw", "incidence4"])
    assert first.exit_code == second.exit_code == 0
    assert first.stdout == second.stdout


def test_order_override(runner):
    result, report = machine(runner, "standard", "a2", "--order", "1<2")
    assert result.exit_code == 0
    assert report["dims"] == {"1": [1, 0], "2": [0, 1]}
    assert report["extra"]["order"] == "1<2"


def test_standard_for_one_weight(runner):
    result, report = machine(runner, "standard", "exm_strictness", "--weight", "3")
    assert result.exit_code == 0
    assert report["dims"] == {"3": [0, 1, 1]}


def test_strictness_failure(runner):
    result, report = machine(runner, "recollement", "exm_strictness", "--ideal", "2", "--strictness")
    assert result.exit_code == 1
    assert report["failing_clause"] == "strictness"
    assert report["extra"]["corner_dim"] == 4
    assert report["extra"]["pack_failures"] == []
    assert "dim 4 of A/A_K against 1 + 1" in report["message"]


def test_recollement_without_strictness(runner):
    result, report = machine(runner, "recollement", "exm_strictness", "--ideal", "2")
    assert result.exit_code == 0
    assert report["cartan"] == [[1, 1], [1, 1]]


def test_ringel_dual_of_a2(runner):
    result, report = machine(runner, "ringel-dual", "a2", "--routes")
    assert result.exit_code == 0, result.output
    assert report["cartan"] == [[1, 1], [0, 1]]
    assert report["extra"]["routes"]["agree"] is True
    assert report["dims"] == {"1": [1, 1], "2": [0, 1]}


def test_ringel_dual_needs_highest_weight(runner):
    result = runner.invoke(cli, ["ringel-dual", "two_cycle", "--order", "1<2"])
    assert result.exit_code == 2


def test_double_dual(runner):
    result, report = machine(runner, "double-dual", "incidence4")
    assert result.exit_code == 0
    assert report["cartan"] == report["extra"]["original"]


def test_hw_equivalent(runner):
    result, report = machine(runner, "hw-equivalent", "a2", "--other", "1<2")
    assert result.exit_code == 1
    assert report["verdict"] is False
    result = runner.invoke(cli, ["hw-equivalent", "a2", "--other", "2<1"])
    assert result.exit_code == 0


def test_canonical_poset(runner):
    result, report = machine(runner, "canonical-poset", "a2")
    assert result.exit_code == 0
    assert report["extra"]["canonical"] == "1<2"
    assert report["extra"]["dominated"] is True
    result = runner.invoke(cli, ["canonical-poset", "two_cycle", "--collection", "simple"])
    assert result.exit_code == 2
    assert "cycle" in result.stdout


def test_membership(runner, tmp_path):
    simple = tmp_path / "l1.mod"
    simple.write_text("dim 1 1\nend\n", encoding="utf-8")
    result, report = machine(runner, "membership", "a2", str(simple))
    assert result.exit_code == 1
    assert report["extra"]["verdicts"] == {"filtration": False, "ext": False, "counit": False}
    projective = tmp_path / "p1.mod"
    projective.write_text("dim 1 1\ndim 2 1\nmap a\n1\nend\n", encoding="utf-8")
    result, report = machine(runner, "membership", "a2", str(projective), "--method", "counit")
    assert result.exit_code == 0
    assert report["extra"]["counit_failures"] == []


def test_membership_rejects_a_bad_module(runner, tmp_path):
    bad = tmp_path / "bad.mod"
    bad.write_text("dim 1 2\nmap x\n0 1\n1 0\nend\n", encoding="utf-8")
    result, report = machine(runner, "membership", "dual_numbers", str(bad), "--method", "filtration")
    assert result.exit_code == 2
    assert report["failing_clause"] == "relation"


def test_envelope(runner):
    result, report = machine(runner, "envelope", "a2")
    assert result.exit_code == 0
    assert report["cartan"] == [[1, 1], [0, 1]]
    assert all(report["extra"]["square_zero"])


def test_errors_exit_2(runner, tmp_path):
    assert runner.invoke(cli, ["check-hw", str(tmp_path / "missing.alg")]).exit_code == 2
    broken = tmp_path / "broken.alg"
    broken.write_text("vertex 1\n", encoding="utf-8")
    result, report = machine(runner, "check-hw", str(broken))
    assert result.exit_code == 2
    assert report["failing_clause"] == "parse"
    assert runner.invoke(cli, ["check-hw", "a2", "--order", "2<9"]).exit_code == 2


def test_catalog(runner):
    result, report = machine(runner, "catalog")
    assert result.exit_code == 0
    assert "exm_strictness" in report["extra"]
    result = runner.invoke(cli, ["catalog", "a2"])
    assert result.exit_code == 0
    assert "arrow a 1 2" in result.stdout
    assert runner.invoke(cli, ["catalog", "nothing"]).exit_code == 2
