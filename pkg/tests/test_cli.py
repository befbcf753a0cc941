import json
import sys
from pathlib import Path

import pytest
from loguru import logger
from typer.testing import CliRunner

from polycomplete.cli import app

SAMPLES = Path(__file__).parent.parent / "samples"

runner = CliRunner()


@pytest.fixture(autouse=True)
def restore_logging():
    """The commands point loguru at the runner's captured stderr."""
    yield
    logger.remove()
    logger.add(sys.stderr)


def sample(name: str) -> str:
    return str(SAMPLES / name)


def write_problem(tmp_path, payload: dict) -> str:
    path = tmp_path / "problem.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


QUADRATIC = {
    "grade": 2,
    "entries": [[[0, 0, 1], [-1], []], [[], [], []]],
}


# --- analyze ---


def test_analyze_json():
    result = runner.invoke(app, ["analyze", sample("quadratic_cmi_d2.json"), "--json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert (data["es"], data["cmi"], data["rmi"]) == ([0], [2, 0], [0])


def test_analyze_zero_matrix():
    result = runner.invoke(app, ["analyze", sample("zero_gf3.json")])
    assert result.exit_code == 0
    assert "c=(0, 0, 0), u=(0, 0), ISD: 0=0" in result.output


def test_analyze_field_override():
    result = runner.invoke(
        app, ["analyze", sample("rotation_infsing_gf5.json"), "--field", "rational", "--json"]
    )
    assert result.exit_code == 0
    assert json.loads(result.stdout)["field"] == {"type": "rational"}


def test_analyze_abstract_eigenstructure():
    result = runner.invoke(app, ["analyze", sample("abstract_rmi.json")])
    assert result.exit_code == 0
    assert "α=(1, s^2+1)" in result.output


# --- check ---


@pytest.mark.parametrize(
    "name, exit_code, verdict",
    [
        ("quadratic_cmi_d2.json", 0, "Cmi: feasible"),
        ("quadratic_cmi_d1.json", 2, "Cmi: infeasible"),
        ("quadratic_finsing.json", 0, "FinSing: feasible"),
        ("abstract_rmi.json", 0, "Rmi: feasible (over an algebraically closed field)"),
        ("rotation_full_gf5.json", 0, "Full: feasible"),
    ],
)
def test_check_exit_codes(name, exit_code, verdict):
    result = runner.invoke(app, ["check", sample(name)])
    assert result.exit_code == exit_code
    assert verdict in result.output


def test_check_columns(tmp_path):
    path = write_problem(
        tmp_path,
        {"matrix": QUADRATIC, "prescription": {"variant": "Rmi", "z": 1, "x": 0, "v": [0]}},
    )
    result = runner.invoke(app, ["check", path, "--columns", "--json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["variant"] == "Cmi"
    assert data["feasible"] is True


@pytest.mark.parametrize(
    "content, expected",
    [
        ("not json", "is not valid JSON"),
        (json.dumps({"matrix": QUADRATIC}), "has no 'prescription'"),
        (
            json.dumps(
                {
                    "matrix": QUADRATIC,
                    "prescription": {"variant": "Cmi", "z": 1, "x": 1, "d": [2], "v": [0]},
                }
            ),
            "validation error",
        ),
        (json.dumps({"prescription": {"variant": "Cmi", "z": 1, "d": [2]}}), "exactly one of"),
    ],
)
def test_check_rejects_bad_files(tmp_path, content, expected):
    path = tmp_path / "problem.json"
    path.write_text(content, encoding="utf-8")
    result = runner.invoke(app, ["check", str(path)])
    assert result.exit_code == 1
    assert expected in result.output


def test_check_missing_file(tmp_path):
    result = runner.invoke(app, ["check", str(tmp_path / "absent.json")])
    assert result.exit_code == 1
    assert "Cannot read problem file" in result.output


# --- chain ---


def test_chain_over_gf5():
    result = runner.invoke(app, ["chain", sample("rotation_infsing_gf5.json"), "--json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["kind"] == "beta"
    assert data["chain"] == [[1], [2, 1]]


@pytest.mark.parametrize(
    "name, exit_code, expected",
    [
        ("rotation_infsing_gf3.json", 3, "field obstruction"),
        ("quadratic_cmi_d1.json", 2, "No Cmi completion exists"),
        ("quadratic_finsing.json", 0, "f-chain (nonpositive branch): (0, 1)"),
    ],
)
def test_chain_exit_codes(name, exit_code, expected):
    result = runner.invoke(app, ["chain", sample(name)])
    assert result.exit_code == exit_code
    assert expected in result.output


def test_chain_assembles_a_full_prescription():
    result = runner.invoke(app, ["chain", sample("quadratic_cmi_d2.json"), "--json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["full"]["variant"] == "Full"
    assert [c["kind"] for c in data["chains"]] == ["beta"]


# --- oracle ---


def test_oracle_consistent_over_gf5():
    result = runner.invoke(app, ["oracle", sample("rotation_infsing_gf5.json"), "--json"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["achieved"] is True
    assert data["consistent"] is True


def test_oracle_reports_the_obstruction_over_gf3():
    result = runner.invoke(app, ["oracle", sample("rotation_infsing_gf5.json"), "--field", "3"])
    assert result.exit_code == 0
    assert "construction obstructed" in result.output
    assert "consistent" in result.output


@pytest.mark.parametrize(
    "args, expected",
    [
        (["rotation_infsing_gf5.json", "--budget", "3"], "but the budget is 3"),
        (["quadratic_cmi_d2.json"], "needs a finite field"),
        (["abstract_rmi.json"], "needs an explicit 'matrix'"),
    ],
)
def test_oracle_errors(args, expected):
    result = runner.invoke(app, ["oracle", sample(args[0]), *args[1:]])
    assert result.exit_code == 1
    assert expected in result.output


# --- selftest ---


def test_selftest_selected_suites():
    result = runner.invoke(
        app, ["selftest", "--trials", "5", "--suite", "union", "--suite", "degenerate", "--json"]
    )
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert [s["name"] for s in data["suites"]] == [
        "union-majorization",
        "gen-majorization-degenerate",
    ]


def test_selftest_unknown_suite():
    result = runner.invoke(app, ["selftest", "--suite", "nope"])
    assert result.exit_code == 1
    assert "Unknown suites ['nope']" in result.output


def test_version():
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert "polycomplete v" in result.output


def test_selftest_with_random_sweeps():
    args = ["--trials", "2", "--suite", "union", "--sweeps", "2", "--sweep-budget", "4"]
    result = runner.invoke(app, ["selftest", *args, "--json"])
    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert len(data["sweeps"]) == 2
    assert all(s["mismatches"] == [] for s in data["sweeps"])


def test_selftest_sweep_budget_too_small():
    args = ["--trials", "1", "--suite", "union", "--sweeps", "1", "--sweep-budget", "1"]
    result = runner.invoke(app, ["selftest", *args])
    assert result.exit_code == 1
    assert "coefficients" in result.output
