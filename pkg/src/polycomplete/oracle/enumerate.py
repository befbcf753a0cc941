"""
Exhaustive search over the completions ``W`` of a matrix over GF(p).

A completion with ``z`` rows and entries of degree at most ``k`` has
``N = z * n * (k + 1)`` coefficients. Completion number ``i`` is the one whose
coefficients are the base-p digits of ``i``, least significant first, with the
coefficient of ``s^t`` in entry ``(row, col)`` at digit
``(row * n + col) * (k + 1) + t``. The range ``[0, p^N)`` is cut into disjoint
slices that are evaluated independently; each slice reports the smallest index
that reaches every eigenstructure it sees, so merging slices by minimum gives
the same result in any order.
"""

from dataclasses import dataclass

from loguru import logger

from polycomplete.algebra.field import PrimeField
from polycomplete.algebra.poly import make_poly, poly_to_json
from polycomplete.common.batch_runner import run_in_batch
from polycomplete.common.logging_utils import log_info
from polycomplete.exceptions import (
    BudgetExceededError,
    GradeExceededError,
    InvalidInputError,
)
from polycomplete.oracle.config import OracleConfig
from polycomplete.oracle.result import OracleResult, Witness, project
from polycomplete.structmat.eigenstructure import Eigenstructure, eigenstructure
from polycomplete.structmat.matrix import PolyMatrix, stack

# Plain data an eigenstructure over GF(p) is keyed by across worker processes
Signature = tuple[tuple[tuple[int, ...], ...], tuple[int, ...], tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class EnumerationTask:
    """One slice ``[start, stop)`` of the completion indices.

    Carries the matrix as plain coefficient arrays so that it travels to
    worker processes without pickling sympy domain elements.
    """

    p: int
    grade: int
    rows: tuple[tuple[tuple[int, ...], ...], ...]
    z: int
    bound: int
    start: int
    stop: int


def required_coefficients(P: PolyMatrix, z: int, bound: int) -> int:
    """Number of coefficients of a ``z``-row completion of degree at most ``bound``."""
    return z * P.cols * (bound + 1)


def decode_completion(
    field: PrimeField, index: int, z: int, n: int, bound: int
) -> PolyMatrix:
    """
    The completion with the given enumeration index.

    Examples:
        >>> W = decode_completion(PrimeField(p=5), 7, 1, 2, 1)
        >>> W.to_json()["entries"]
        [[[2, 1], []]]
    """
    p = field.p
    rows = []
    for _ in range(z):
        row = []
        for _ in range(n):
            coeffs = []
            for _ in range(bound + 1):
                index, digit = divmod(index, p)
                coeffs.append(digit)
            row.append(coeffs)
        rows.append(row)
    return PolyMatrix.from_coeffs(field, bound, rows)


def _signature(eig: Eigenstructure) -> Signature:
    return (
        tuple(tuple(poly_to_json(a)) for a in eig.alphas),
        tuple(eig.es),
        tuple(eig.cmi),
        tuple(eig.rmi),
    )


def _from_signature(field: PrimeField, grade: int, sig: Signature) -> Eigenstructure:
    alphas, es, cmi, rmi = sig
    return Eigenstructure(
        field, grade, tuple(make_poly(field, a) for a in alphas), es, cmi, rmi
    )


def _enumerate_range(task: EnumerationTask) -> dict[Signature, int]:
    field = PrimeField(p=task.p)
    P = PolyMatrix.from_coeffs(field, task.grade, task.rows)
    reached: dict[Signature, int] = {}
    for index in range(task.start, task.stop):
        W = decode_completion(field, index, task.z, P.cols, task.bound)
        sig = _signature(eigenstructure(stack(P, W)))
        reached.setdefault(sig, index)
    logger.debug(
        "Slice [{}, {}) reached {} eigenstructures.", task.start, task.stop, len(reached)
    )
    return reached


def _tasks(P: PolyMatrix, z: int, bound: int, total: int, partitions: int):
    rows = tuple(tuple(tuple(c) for c in row) for row in P.to_json()["entries"])
    size = max(1, -(-total // partitions))
    for start in range(0, total, size):
        yield EnumerationTask(
            P.field.p, P.grade, rows, z, bound, start, min(total, start + size)
        )


def enumerate_completions(
    P: PolyMatrix, cfg: OracleConfig | None = None, verbose: bool = False
) -> OracleResult:
    """
    Enumerate every completion ``W`` and record the eigenstructures of ``[P; W]``.

    Args:
        P: The matrix being completed, over GF(p).
        cfg: Search settings; the defaults when omitted.
        verbose: Whether to log progress at INFO level.

    Returns:
        The reached eigenstructures, each with the completion of smallest index
        that reaches it. Restricted to the target projection when
        ``cfg.target`` is set.

    Raises:
        InvalidInputError: If ``P`` is not over a prime field.
        GradeExceededError: If the degree bound exceeds the grade of ``P``.
        BudgetExceededError: If the coefficient count exceeds the budget and
            the override is not set.
    """
    cfg = cfg or OracleConfig()
    if not isinstance(P.field, PrimeField):
        raise InvalidInputError(
            f"The completion search needs a finite field, got {P.field.label}.\n"
            "💡 Hint: Pass `--field 5` (or another prime) to search over GF(p)."
        )
    bound = cfg.bound_for(P)
    if bound > P.grade:
        raise GradeExceededError(
            f"Completions of degree {bound} exceed the grade {P.grade} of P."
        )

    needed = required_coefficients(P, cfg.z, bound)
    if needed > cfg.budget:
        if not cfg.override:
            raise BudgetExceededError(needed, cfg.budget)
        logger.warning(
            "Enumerating {} coefficients above the budget of {}.", needed, cfg.budget
        )

    base = eigenstructure(P)
    total = P.field.p**needed
    log_info(
        verbose,
        "Enumerating {} completions over {} (z={}, deg W <= {}).",
        total,
        P.field.label,
        cfg.z,
        bound,
    )

    merged: dict[Signature, int] = {}
    slices = run_in_batch(
        _enumerate_range,
        list(_tasks(P, cfg.z, bound, total, cfg.partitions)),
        "slices",
        n_jobs=cfg.n_jobs,
        show_progress=cfg.show_progress,
        verbose=verbose,
    )
    for reached in slices:
        for sig, index in reached.items():
            if sig not in merged or index < merged[sig]:
                merged[sig] = index

    achieved: dict[Eigenstructure, Witness] = {}
    for sig, index in sorted(merged.items(), key=lambda kv: kv[1]):
        eig = _from_signature(P.field, P.grade, sig)
        target = cfg.target
        if target is not None and project(eig, base, cfg.z, target.variant) != target:
            continue
        W = decode_completion(P.field, index, cfg.z, P.cols, bound)
        achieved[eig] = Witness(index, W)

    log_info(verbose, "Reached {} eigenstructures.", len(achieved))
    return OracleResult(base, P.field, cfg.z, bound, P.grade, total, achieved)
