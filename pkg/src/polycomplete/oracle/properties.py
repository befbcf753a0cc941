"""
Seeded random property suites for the ``selftest`` command.

Each suite draws its instances from a ``random.Random`` seeded by the caller,
so a failing run can be replayed with the same seed. A suite never raises on
a failed property; it records a one-line description of the instance.
"""

import random
from collections.abc import Callable
from dataclasses import dataclass, field

from loguru import logger

from polycomplete.algebra.field import PrimeField, RationalField
from polycomplete.common.logging_utils import log_info
from polycomplete.completion.columns import check_columns, transpose_prescription
from polycomplete.completion.full import build_ab_full, check_full
from polycomplete.completion.prescription import Variant
from polycomplete.completion.registry import check
from polycomplete.completion.witness import witness_to_full
from polycomplete.exceptions import FieldObstructionError, InvalidInputError, PolyCompleteError
from polycomplete.oracle.config import OracleConfig
from polycomplete.oracle.result import project
from polycomplete.oracle.targets import candidate_targets
from polycomplete.oracle.verify import SweepReport, sweep
from polycomplete.seqcomb.majorization import gen_majorize, majorize
from polycomplete.seqcomb.sequences import IntSeq, seq_union
from polycomplete.structmat.eigenstructure import eigenstructure
from polycomplete.structmat.matrix import PolyMatrix, stack
from polycomplete.structmat.smith import invariant_factors_from_divisors, smith_form

SMALL_FIELDS = (PrimeField(p=2), PrimeField(p=3))


@dataclass
class PropertyOutcome:
    """Trials run by one suite and the instances that failed."""

    name: str
    trials: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        logger.debug("{}: {}", self.name, message)
        self.failures.append(message)

    def to_json(self) -> dict:
        return {"name": self.name, "trials": self.trials, "failures": self.failures}

    def format(self) -> str:
        mark = "✓" if self.passed else "✗"
        line = f"{mark} {self.name}: {self.trials} trials, {len(self.failures)} failures"
        return "\n".join([line, *(f"    {f}" for f in self.failures[:5])])


def random_matrix(
    rng: random.Random,
    field: PrimeField | RationalField,
    rows: int,
    cols: int,
    grade: int,
    density: float = 0.6,
) -> PolyMatrix:
    """A sparse random matrix; rationals draw integer coefficients in ``[-2, 2]``."""
    low, high = (0, field.p - 1) if isinstance(field, PrimeField) else (-2, 2)
    coeffs = [
        [
            [rng.randint(low, high) if rng.random() < density else 0 for _ in range(grade + 1)]
            for _ in range(cols)
        ]
        for _ in range(rows)
    ]
    return PolyMatrix.from_coeffs(field, grade, coeffs)


def _random_partition(rng: random.Random, length: int, top: int = 9) -> IntSeq:
    return IntSeq(sorted((rng.randint(0, top) for _ in range(length)), reverse=True))


def _small_instance(rng: random.Random):
    """A random ``P`` over GF(2) or GF(3) with a random completion of one or two rows."""
    field_ = rng.choice(SMALL_FIELDS)
    grade = rng.randint(1, 2)
    P = random_matrix(rng, field_, rng.randint(1, 2), rng.randint(1, 3), grade)
    z = rng.choice((1, 2))
    W = random_matrix(rng, field_, z, P.cols, grade)
    return P, W, z


def index_sum_suite(rng: random.Random, trials: int) -> PropertyOutcome:
    """Extraction never breaks the Index Sum; elimination agrees with minors."""
    out = PropertyOutcome("index-sum")
    for _ in range(trials):
        field_ = rng.choice((*SMALL_FIELDS, RationalField()))
        P = random_matrix(rng, field_, rng.randint(1, 3), rng.randint(1, 3), rng.randint(0, 2))
        out.trials += 1
        try:
            eigenstructure(P)
        except PolyCompleteError as e:
            out.fail(f"{P.to_json()}: {e}")
            continue
        if smith_form(P) != invariant_factors_from_divisors(P):
            out.fail(f"{P.to_json()}: Smith form differs from the determinantal divisors")
    return out


def union_suite(rng: random.Random, trials: int) -> PropertyOutcome:
    """The union of two sequences is majorized by the pair."""
    out = PropertyOutcome("union-majorization")
    for _ in range(trials):
        u = _random_partition(rng, rng.randint(0, 6))
        b = _random_partition(rng, rng.randint(0, 6))
        out.trials += 1
        if not gen_majorize(seq_union(u, b), u, b)[0]:
            out.fail(f"u={tuple(u)}, b={tuple(b)}")
    return out


def degenerate_suite(rng: random.Random, trials: int) -> PropertyOutcome:
    """Generalized majorization reduces to equality and to majorization."""
    out = PropertyOutcome("gen-majorization-degenerate")
    for _ in range(trials):
        k = rng.randint(0, 5)
        g, d, a = (_random_partition(rng, k, 4) for _ in range(3))
        out.trials += 1
        if gen_majorize(g, d, ())[0] != (g == d):
            out.fail(f"empty a: g={tuple(g)}, d={tuple(d)}")
        if gen_majorize(g, (), a)[0] != majorize(g, a):
            out.fail(f"empty d: g={tuple(g)}, a={tuple(a)}")

        # relaxing a keeps the generalized order
        g2 = seq_union(d, a)
        relaxed = tuple(a)
        if len(a) >= 2 and a[-1] > 0:
            relaxed = (a[0] + 1, *a[1:-1], a[-1] - 1)
        if (
            gen_majorize(g2, d, a)[0]
            and majorize(a, relaxed)
            and not gen_majorize(g2, d, relaxed)[0]
        ):
            out.fail(f"relaxation: g={tuple(g2)}, d={tuple(d)}, a={tuple(a)}")
    return out


def transposition_suite(rng: random.Random, trials: int) -> PropertyOutcome:
    """Column completions of ``P`` are row completions of ``P^T``, minimal indices swapped."""
    out = PropertyOutcome("transposition-duality")
    for _ in range(trials):
        P, _, z = _small_instance(rng)
        out.trials += 1
        base = eigenstructure(P)
        base_t = eigenstructure(P.transpose())
        if base_t != base.transpose():
            out.fail(f"{P.to_json()}: transposed eigenstructure")
            continue

        # [P W] through the row completion [P^T; W^T]
        rows_t = stack(P.transpose(), random_matrix(rng, P.field, z, P.rows, P.grade))
        reached = eigenstructure(rows_t.transpose())
        if eigenstructure(rows_t) != reached.transpose():
            out.fail(f"{P.to_json()}: {rows_t.to_json()} transposed completion")
            continue

        for variant in Variant:
            presc = project(reached, base, z, variant)
            by_columns = check_columns(base, presc)
            by_rows = check(base_t, transpose_prescription(presc))
            if not by_columns.feasible:
                out.fail(f"{P.to_json()}: reached {presc.format()} judged infeasible")
            elif by_rows.feasible != by_columns.feasible:
                out.fail(f"{P.to_json()}: {presc.format()} differs on P^T")
    return out


def _bounding_sequence_failure(a: tuple[int, ...], b: tuple[int, ...]) -> str | None:
    if list(a) != sorted(a, reverse=True):
        return f"column sequence {a}"
    if list(b) != sorted(b, reverse=True) or (b and b[-1] < 0):
        return f"row sequence {b}"
    return None


def ab_forms_suite(rng: random.Random, trials: int) -> PropertyOutcome:
    """The two forms of the full predicate agree; feasible targets have monotone sequences."""
    out = PropertyOutcome("full-forms-agree")
    for _ in range(trials):
        P, W, z = _small_instance(rng)
        base = eigenstructure(P)
        reached = project(eigenstructure(stack(P, W)), base, z, Variant.FULL)
        pool = candidate_targets(base, Variant.FULL, z, [reached], limit=50)
        for presc in (reached, rng.choice(pool)):
            out.trials += 1
            primary = check_full(base, presc, form="primary").feasible
            alternate = check_full(base, presc, form="alternate").feasible
            if primary != alternate:
                out.fail(f"{P.to_json()}: {presc.format()} ({primary} vs {alternate})")
            elif primary:
                bad = _bounding_sequence_failure(*build_ab_full(base, presc))
                if bad:
                    out.fail(f"{P.to_json()}: {presc.format()} {bad}")
    return out


def monotonicity_suite(rng: random.Random, trials: int) -> PropertyOutcome:
    """Bounding sequences of the infinite predicate are nonincreasing under the excess bounds."""
    out = PropertyOutcome("bounding-sequences-nonincreasing")
    needed = {"infinite-interlacing", "excess-bound", "row-excess"}
    for _ in range(trials):
        P, _, z = _small_instance(rng)
        base = eigenstructure(P)
        pool = candidate_targets(base, Variant.INF_SING, z, limit=200)
        presc = rng.choice(pool)
        report = check(base, presc)
        if not all(report.condition(cid).holds for cid in needed):
            continue
        out.trials += 1
        aux = report.aux_sequences
        bad = _bounding_sequence_failure(aux["column"], aux["row"])
        if bad:
            out.fail(f"{P.to_json()}: {presc.format()} {bad}")
    return out


def witness_closure_suite(rng: random.Random, trials: int) -> PropertyOutcome:
    """Every reached partial prescription assembles into a feasible full one."""
    out = PropertyOutcome("witness-closure")
    for _ in range(trials):
        P, W, z = _small_instance(rng)
        base = eigenstructure(P)
        eig = eigenstructure(stack(P, W))
        for variant in Variant:
            presc = project(eig, base, z, variant)
            out.trials += 1
            if not check(base, presc).feasible:
                out.fail(f"{P.to_json()}: reached {presc.format()} judged infeasible")
                continue
            try:
                witness_to_full(base, presc)
            except FieldObstructionError:
                continue
            except PolyCompleteError as e:
                out.fail(f"{P.to_json()}: {presc.format()}: {e}")
    return out


def random_sweep(
    rng: random.Random,
    z: int = 1,
    budget: int = 14,
    limit: int = 200,
    verbose: bool = False,
) -> SweepReport:
    """
    Sweep every variant on a random ``P`` over GF(2) or GF(3).

    Shapes are redrawn until a ``z``-row search fits in ``budget`` coefficients.

    Raises:
        InvalidInputError: If no drawable shape fits the budget.
    """
    if z * 2 > budget:
        raise InvalidInputError(
            f"No random matrix fits a {z}-row search in {budget} coefficients."
        )
    while True:
        field_ = rng.choice(SMALL_FIELDS)
        rows, cols, grade = rng.randint(1, 2), rng.randint(1, 3), rng.randint(1, 2)
        if z * cols * (grade + 1) <= budget:
            break
    P = random_matrix(rng, field_, rows, cols, grade)
    log_info(
        verbose,
        "Sweeping a {}x{} matrix of grade {} over {} with z={}.",
        rows,
        cols,
        grade,
        field_.label,
        z,
    )
    return sweep(P, OracleConfig(z=z, budget=budget), limit=limit, verbose=verbose)


SUITES: dict[str, Callable[[random.Random, int], PropertyOutcome]] = {
    "index-sum": index_sum_suite,
    "union": union_suite,
    "degenerate": degenerate_suite,
    "transposition": transposition_suite,
    "ab-forms": ab_forms_suite,
    "monotonicity": monotonicity_suite,
    "witness-closure": witness_closure_suite,
}


def run_suites(
    seed: int = 0,
    trials: int = 200,
    names: list[str] | None = None,
    verbose: bool = False,
) -> list[PropertyOutcome]:
    """
    Run the named suites (all by default), each with its own generator seeded by ``seed``.

    Raises:
        KeyError: If a suite name is unknown.
    """
    outcomes = []
    for name in names or list(SUITES):
        log_info(verbose, "Running {} with seed {} ({} trials).", name, seed, trials)
        outcomes.append(SUITES[name](random.Random(seed), trials))
    return outcomes
