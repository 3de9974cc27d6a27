import json

import pytest

import app
import create_golden_files
from app import EXIT_FAILED, EXIT_OK, EXIT_USAGE, RunConfig, main
from conftest import normalize
from models.check_result import CheckResult
from models.complex import DifferentialComplex, Regime
from models.graded_object import GradedObject
from models.matrix import MatrixMorphism
from utils.latex_renderer import render_latex
from utils.worker_pool import run_statements


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--n", "0"],
        ["verify", "--n", "13"],
        ["verify", "--n", "2", "--ring", "reals"],
        ["verify", "--n", "2", "--ring", "gf:9"],
        ["verify", "--n", "2", "--suite", "lemma"],
        ["verify", "--n", "2", "--format", "yaml"],
        ["frobnicate", "--n", "2"],
        ["verify"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, _ = run_cli(capsys, *argv)
    assert code == EXIT_USAGE
    assert out == ""


def test_usage_error_message(capsys):
    code, _, err = run_cli(capsys, "psi", "--n", "0")
    assert code == EXIT_USAGE
    assert err.startswith("Error: n must lie in")


def test_run_config_validation():
    assert RunConfig("grm", 3).ring == "z"
    with pytest.raises(ValueError):
        RunConfig("grm", 3, mode="local")


def test_verify_selected_suites(capsys):
    code, out, _ = run_cli(capsys, "verify", "--n", "2", "--suite", "scalars", "--suite", "strata")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "n = 2, ring z, mode affine"
    assert "[scalars]" in out and "[strata]" in out
    assert out.rstrip().endswith("PASS")


def test_verify_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "--n", "2", "--suite", "morphcalc", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["passed"] is True
    assert data["failed"] == 0
    assert all(r["status"] == "pass" for r in data["suites"]["morphcalc"])


@pytest.mark.parametrize("ring", ["q", "gf:2", "gf:7"])
def test_verify_over_other_rings(capsys, ring):
    code, out, _ = run_cli(capsys, "verify", "--n", "2", "--ring", ring, "--suite", "pushforwards")
    assert code == EXIT_OK, out


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3])
def test_verify_everything(capsys, n):
    code, out, _ = run_cli(capsys, "verify", "--n", str(n))
    assert code == EXIT_OK, out


def test_thread_count_does_not_change_output(capsys):
    argv = ["verify", "--n", "3", "--suite", "lemmas", "--suite", "theorem"]
    _, single, _ = run_cli(capsys, *argv, "--threads", "1")
    _, pooled, _ = run_cli(capsys, *argv, "--threads", "4")
    assert single == pooled


def test_psi_latex_matches_golden(capsys, golden):
    code, out, _ = run_cli(capsys, "psi", "--n", "2", "--format", "latex", "--untwisted")
    assert code == EXIT_OK
    assert normalize(out) == normalize(golden("z_n2.tex"))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_render_latex_golden(nearby, golden, n):
    assert normalize(render_latex(nearby(n).build_Z())) == normalize(golden(f"z_n{n}.tex"))


def test_render_zero_complex(ring):
    obj = GradedObject.zero(2)
    zero = DifferentialComplex(obj, MatrixMorphism.zero(obj, obj, ring(2)), Regime.MIX, "0")
    assert render_latex(zero).splitlines()[1] == "0"


def test_psi_twist(capsys):
    _, twisted, _ = run_cli(capsys, "psi", "--n", "1", "--format", "json")
    _, untwisted, _ = run_cli(capsys, "psi", "--n", "1", "--format", "json", "--untwisted")
    assert json.loads(twisted)["summands"][0]["t"] == -1
    assert json.loads(untwisted)["summands"][0]["t"] == 0


def test_psi_text(capsys):
    code, out, _ = run_cli(capsys, "psi", "--n", "2")
    assert code == EXIT_OK
    assert out.startswith("Psi (mix, 4 summands)")


def test_grm_json(capsys):
    code, out, _ = run_cli(capsys, "grm", "--n", "2", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["matches_closed_form"] is True
    assert data["gr"]["total"] == 4
    assert data["psi"]["twist_offset"] == -1


def test_grm_text(capsys):
    code, out, _ = run_cli(capsys, "grm", "--n", "3")
    assert code == EXIT_OK
    assert "closed form: matches" in out


@pytest.mark.parametrize("command", ["weyl", "chart"])
def test_weyl_and_chart(capsys, command):
    code, out, _ = run_cli(capsys, command, "--n", "3")
    assert code == EXIT_OK
    assert "FAIL" not in out


def test_weyl_json(capsys):
    code, out, _ = run_cli(capsys, "weyl", "--n", "2", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert len(data["admissible"]) == 3
    assert [t["word"] for t in data["translations"]] == ["s2 ω", "s1 ω"]


@pytest.mark.parametrize("mode", ["affine", "global"])
def test_usage_command(capsys, mode):
    code, out, _ = run_cli(capsys, "usage", "--n", "3", "--mode", mode)
    assert code == EXIT_OK
    assert "max |I| = 1, bound 1" in out


def test_usage_json(capsys):
    code, out, _ = run_cli(capsys, "usage", "--n", "2", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["max_size"] == 0
    assert data["within_bound"] is True


def test_run_statements_keeps_order():
    statements = [(f"s{i}", lambda i=i: i % 3 != 0) for i in range(12)]
    for workers in (1, 4):
        results = run_statements(statements, workers)
        assert [r.statement for r in results] == [f"s{i}" for i in range(12)]
        assert [r.passed for r in results] == [i % 3 != 0 for i in range(12)]


def test_run_statements_turns_value_errors_into_failures():
    def broken():
        raise ValueError("no such summand")

    results = run_statements([("ok", lambda: CheckResult.from_bool("ok", True)), ("broken", broken)], 2)
    assert results[0].passed
    assert not results[1].passed
    assert "no such summand" in results[1].detail


@pytest.mark.parametrize("n", range(1, 5))
def test_psi_runs_for_small_n(capsys, n):
    code, out, _ = run_cli(capsys, "psi", "--n", str(n))
    assert code == EXIT_OK
    assert out.startswith("Psi (mix, ")


def test_unexpected_errors_exit_with_failure(capsys, monkeypatch):
    def broken(config, controller):
        raise IndexError("list index out of range")

    monkeypatch.setitem(app.HANDLERS, "psi", broken)
    code, out, err = run_cli(capsys, "psi", "--n", "2")
    assert code == EXIT_FAILED
    assert out == ""
    assert "Error: list index out of range" in err


def test_diagram_layout_follows_height(nearby):
    short = render_latex(nearby(2).build_Z())
    tall = render_latex(nearby(3).build_Z())
    assert short.startswith("\\begin{tikzcd}[ampersand replacement=\\&]")
    assert "bend right=60" in short
    assert tall.startswith("\\begin{tikzcd}[row sep=large,ampersand replacement=\\&]")
    assert "bend right=80" in tall and "bend right=60" not in tall


def test_golden_check_reports_drift(capsys, nearby):
    assert create_golden_files.main([]) == 0
    text = render_latex(nearby(2).build_Z())
    assert create_golden_files.drift(2, text) == []
    assert create_golden_files.drift(2, text.replace("bend right=60", "bend right=70"))
