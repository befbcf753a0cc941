import json
import random
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import List, Optional

import typer
from pydantic import ValidationError

from polycomplete.algebra.field import parse_field
from polycomplete.common.logging_utils import configure_cli_logging
from polycomplete.common.validation import pretty_errors
from polycomplete.completion.chains import (
    construct_beta_chain,
    construct_f_chain,
    construct_gamma_chain,
)
from polycomplete.completion.columns import check_columns
from polycomplete.completion.prescription import Variant
from polycomplete.completion.registry import check
from polycomplete.completion.witness import assemble_full
from polycomplete.exceptions import (
    FieldObstructionError,
    NotFeasibleError,
    PolyCompleteError,
)
from polycomplete.oracle.config import OracleConfig
from polycomplete.oracle.properties import SUITES, random_sweep, run_suites
from polycomplete.oracle.verify import sweep, verify_predicate
from polycomplete.schema import load_problem

try:
    __version__ = version("polycomplete")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "unknown"

# Exit codes, the contract scripts rely on
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2
EXIT_OBSTRUCTION = 3
EXIT_MISMATCH = 4

app = typer.Typer(
    name="polycomplete",
    help="Exact eigenstructure of polynomial matrices and feasibility of row completions with prescribed invariants, cross-checked by an exhaustive search over finite fields.",
    rich_help_panel=True,
    add_completion=False,
)

DIRECT_CHAINS = {
    Variant.INF_SING: construct_beta_chain,
    Variant.FIN_SING: construct_f_chain,
    Variant.SING: construct_gamma_chain,
}


def _fail(message: str, code: int = EXIT_ERROR):
    typer.echo(f"Error: {message}", err=True)
    raise typer.Exit(code=code)


def _emit(payload: dict, human: str, as_json: bool) -> None:
    typer.echo(json.dumps(payload, indent=2, ensure_ascii=False) if as_json else human)


def _load(path: Path, field: Optional[str], verbose: bool):
    """Read a problem file and apply the field override."""
    configure_cli_logging(verbose)
    try:
        problem = load_problem(path)
        chosen = parse_field(field) if field else None
    except PolyCompleteError as e:
        _fail(str(e))
    return problem, chosen


path_argument = typer.Argument(..., help="Path to a JSON problem file.")
field_option = typer.Option(
    None,
    "--field",
    "-f",
    help="Override the field of the problem file: 'rational' or a prime such as '5'.",
)
json_option = typer.Option(False, "--json", help="Print machine-readable JSON.")
verbose_option = typer.Option(False, "--verbose", "-v", help="Enable verbose logging.")


@app.command(name="analyze", help="Print the eigenstructure of a matrix and its Index Sum.")
def analyze_command(
    path: Path = path_argument,
    field: Optional[str] = field_option,
    as_json: bool = json_option,
    verbose: bool = verbose_option,
):
    """Analyze the matrix (or abstract eigenstructure) of a problem file"""
    problem, chosen = _load(path, field, verbose)
    try:
        base = problem.base(chosen, verbose=verbose)
    except PolyCompleteError as e:
        _fail(str(e))
    _emit(base.to_json(), base.format(), as_json)


@app.command(name="check", help="Decide feasibility of the prescription of a problem file.")
def check_command(
    path: Path = path_argument,
    field: Optional[str] = field_option,
    columns: bool = typer.Option(
        False, "--columns", help="Read the prescription as a column completion [P W]."
    ),
    as_json: bool = json_option,
    verbose: bool = verbose_option,
):
    """Exit 0 when feasible, 2 when infeasible, 1 on invalid input"""
    problem, chosen = _load(path, field, verbose)
    try:
        base = problem.base(chosen, verbose=verbose)
        presc = problem.to_prescription(chosen)
        report = check_columns(base, presc) if columns else check(base, presc)
    except PolyCompleteError as e:
        _fail(str(e))

    _emit(report.to_json(), report.format(), as_json)
    raise typer.Exit(code=EXIT_OK if report.feasible else EXIT_INFEASIBLE)


@app.command(
    name="chain",
    help="Construct the chains that complete a feasible prescription to a full one.",
)
def chain_command(
    path: Path = path_argument,
    field: Optional[str] = field_option,
    as_json: bool = json_option,
    verbose: bool = verbose_option,
):
    """Exit 2 when infeasible, 3 when a chain does not exist over the field"""
    problem, chosen = _load(path, field, verbose)
    try:
        base = problem.base(chosen, verbose=verbose)
        presc = problem.to_prescription(chosen)
        direct = DIRECT_CHAINS.get(presc.variant)
        if direct is not None:
            built = direct(base, presc)
            payload, human = built.to_json(), built.format()
        else:
            assembly = assemble_full(base, presc)
            payload = {
                "chains": [c.to_json() for c in assembly.chains],
                "full": assembly.full.to_json(),
            }
            human = "\n".join(
                [*(c.format() for c in assembly.chains), assembly.full.format()]
            )
    except NotFeasibleError as e:
        _fail(str(e), EXIT_INFEASIBLE)
    except FieldObstructionError as e:
        _fail(f"field obstruction: {e}", EXIT_OBSTRUCTION)
    except PolyCompleteError as e:
        _fail(str(e))

    _emit(payload, human, as_json)


@app.command(
    name="oracle",
    help="Compare the predicate with an exhaustive search over completions (finite fields only).",
)
def oracle_command(
    path: Path = path_argument,
    field: Optional[str] = field_option,
    budget: Optional[int] = typer.Option(
        None, "--budget", help="Largest number of enumerated coefficients."
    ),
    override: bool = typer.Option(
        False, "--override", help="Enumerate even when the budget is exceeded."
    ),
    n_jobs: Optional[int] = typer.Option(
        None, "--jobs", "-j", help="Worker processes; all CPUs when 0."
    ),
    all_variants: bool = typer.Option(
        False, "--sweep", help="Compare every variant on reached and candidate targets."
    ),
    as_json: bool = json_option,
    verbose: bool = verbose_option,
):
    """Exit 0 when consistent, 4 on a mismatch, 1 on errors or an exceeded budget"""
    problem, chosen = _load(path, field, verbose)
    try:
        P = problem.to_matrix(chosen)
    except PolyCompleteError as e:
        _fail(str(e))
    if P is None:
        _fail("The search needs an explicit 'matrix' in the problem file.")

    changes = {"override": override} if override else {}
    if budget is not None:
        changes["budget"] = budget
    if n_jobs is not None:
        changes["n_jobs"] = n_jobs or None
    try:
        cfg = OracleConfig.model_validate(
            {**(problem.oracle or OracleConfig()).model_dump(), **changes}
        )
    except ValidationError as e:
        _fail(pretty_errors(e))

    try:
        if all_variants:
            outcome = sweep(P, cfg, verbose=verbose)
        else:
            outcome = verify_predicate(P, problem.to_prescription(chosen), cfg, verbose=verbose)
    except PolyCompleteError as e:
        _fail(str(e))

    _emit(outcome.to_json(), outcome.format(), as_json)
    raise typer.Exit(code=EXIT_OK if outcome.consistent else EXIT_MISMATCH)


@app.command(name="selftest", help="Run the seeded random property suites.")
def selftest_command(
    seed: int = typer.Option(0, "--seed", help="Seed of the random instances."),
    trials: int = typer.Option(200, "--trials", "-n", help="Instances per suite."),
    suites: Optional[List[str]] = typer.Option(
        None, "--suite", "-s", help="Run only the named suites (repeatable)."
    ),
    sweeps: int = typer.Option(
        0, "--sweeps", help="Also sweep this many random matrices over GF(2) and GF(3)."
    ),
    sweep_budget: int = typer.Option(
        6, "--sweep-budget", help="Coefficient budget of each random sweep."
    ),
    as_json: bool = json_option,
    verbose: bool = verbose_option,
):
    """Exit 0 when every property holds, 4 otherwise"""
    configure_cli_logging(verbose)
    unknown = sorted(set(suites or ()) - set(SUITES))
    if unknown:
        _fail(f"Unknown suites {unknown}. Available: {sorted(SUITES)}")

    outcomes = run_suites(seed, trials, suites, verbose=verbose)
    payload = {"seed": seed, "suites": [o.to_json() for o in outcomes]}
    lines = [o.format() for o in outcomes]
    passed = all(o.passed for o in outcomes)

    rng = random.Random(seed)
    sweep_reports = []
    for _ in range(sweeps):
        try:
            report = random_sweep(
                rng, z=rng.choice((1, 2)), budget=sweep_budget, verbose=verbose
            )
        except PolyCompleteError as e:
            _fail(str(e))
        sweep_reports.append(report.to_json())
        lines.append(report.format())
        passed = passed and report.consistent
    if sweeps:
        payload["sweeps"] = sweep_reports

    _emit(payload, "\n".join(lines), as_json)
    raise typer.Exit(code=EXIT_OK if passed else EXIT_MISMATCH)


@app.callback(invoke_without_command=True)
def main_callback(
    version: Optional[bool] = typer.Option(
        None, "--version", "-v", help="Show program's version number and exit."
    ),
):
    if version:
        typer.echo(f"polycomplete v{__version__}")
        raise typer.Exit()


if __name__ == "__main__":
    app()
