"""
Completions with the invariant factors prescribed.

The mirror of :mod:`polycomplete.completion.infinite` with the roles of the
finite and infinite structure exchanged: base factors enter through
``deg lcm(alpha_k, beta_i)`` and the partial multiplicities of infinity bound
the excess. Every verdict here holds over arbitrary fields.
"""

from collections.abc import Sequence

from loguru import logger
from sympy import Poly

from polycomplete.algebra.poly import divides, format_poly, poly_degree
from polycomplete.completion.infinite import column_side_sequence
from polycomplete.completion.prescription import Prescription, Variant
from polycomplete.completion.report import (
    FeasibilityReport,
    compare,
    generalized_majorization,
    ordinary_majorization,
    structural,
)
from polycomplete.completion.terms import a_sequence, b_sequence, finite_pair, tail_sum
from polycomplete.structmat.eigenstructure import Eigenstructure


def finite_interlacing(
    alphas: Sequence[Poly], betas: Sequence[Poly], z: int
) -> str | None:
    """First violation of ``beta_i | alpha_i | beta_{i+z}`` (``beta`` past the end is 0)."""
    for i, alpha in enumerate(alphas, start=1):
        if not divides(betas[i - 1], alpha):
            return (
                f"beta_{i} = {format_poly(betas[i - 1])} does not divide "
                f"alpha_{i} = {format_poly(alpha)}"
            )
        if i + z <= len(betas) and not divides(alpha, betas[i + z - 1]):
            return (
                f"alpha_{i} = {format_poly(alpha)} does not divide "
                f"beta_{i + z} = {format_poly(betas[i + z - 1])}"
            )
    return None


def _beta_degree_sum(presc: Prescription) -> int:
    return sum(poly_degree(b) for b in presc.beta)


def finite_excess(base: Eigenstructure, presc: Prescription) -> int:
    """``sum deg beta - sum deg alpha + sum d - sum c + sum v - sum u - x*grade``."""
    return (
        _beta_degree_sum(presc)
        - sum(base.alpha_degrees)
        + sum(presc.d)
        - sum(base.cmi)
        + sum(presc.v)
        - sum(base.rmi)
        - presc.x * base.grade
    )


def reduced_finite_excess(base: Eigenstructure, presc: Prescription) -> int:
    return (
        _beta_degree_sum(presc)
        - sum(base.alpha_degrees)
        - sum(base.cmi[: presc.x])
        + sum(presc.v)
        - sum(base.rmi)
        - presc.x * base.grade
    )


def _row_side(base: Eigenstructure, presc: Prescription, excess: int):
    x, z, grade = presc.x, presc.z, base.grade
    pairing = finite_pair(base.alphas, presc.beta)
    row_surplus = sum(presc.v) - sum(base.rmi)
    own = _beta_degree_sum(presc)

    a = a_sequence(pairing, x, grade, row_surplus + own - excess - grade)
    b = b_sequence(pairing, x, z, row_surplus + own, base.es, excess)
    conditions = [
        compare("nonzero-row-indices", presc.eta_bar, base.eta, ">="),
        structural("finite-interlacing", finite_interlacing(base.alphas, presc.beta, z)),
        compare("excess-bound", excess, tail_sum(base.es, z - x), "<="),
        compare(
            "row-excess",
            row_surplus,
            max(0, excess) + pairing.degree_sum(x) - own,
            ">=",
        ),
    ]
    return conditions, a, b


def check_fin_sing(base: Eigenstructure, presc: Prescription) -> FeasibilityReport:
    """
    Decide a completion with prescribed ``beta``, ``d`` and ``v``.

    Raises:
        InvalidPrescriptionError: If the prescription is not a ``FinSing``
            one or does not fit the base.
    """
    presc.require(Variant.FIN_SING).fit(base)
    excess = finite_excess(base, presc)
    conditions, a, b = _row_side(base, presc, excess)
    conditions.append(
        generalized_majorization("column-majorization", base.cmi, presc.d, a)
    )
    conditions.append(generalized_majorization("row-majorization", presc.v, base.rmi, b))
    logger.debug("FinSing: B={}, a={}, b={}", excess, a, b)
    return FeasibilityReport.from_conditions(
        Variant.FIN_SING,
        conditions,
        constants={"finite_excess": excess},
        aux_sequences={"column": a, "row": b},
    )


def check_fin_cmi(base: Eigenstructure, presc: Prescription) -> FeasibilityReport:
    """Decide a completion with prescribed ``beta`` and ``d``."""
    presc.require(Variant.FIN_CMI).fit(base)
    x, z = presc.x, presc.z
    pairing = finite_pair(base.alphas, presc.beta)
    base_sum = sum(base.alpha_degrees)
    a = column_side_sequence(base, presc, pairing, base_sum)
    conditions = [
        structural("finite-interlacing", finite_interlacing(base.alphas, presc.beta, z)),
        compare(
            "column-excess",
            sum(base.cmi) - sum(presc.d),
            pairing.degree_sum(x) - base_sum - x * base.grade,
            ">=",
        ),
        generalized_majorization("column-majorization", base.cmi, presc.d, a),
    ]
    return FeasibilityReport.from_conditions(
        Variant.FIN_CMI, conditions, aux_sequences={"column": a}
    )


def check_fin_rmi(base: Eigenstructure, presc: Prescription) -> FeasibilityReport:
    """Decide a completion with prescribed ``beta`` and ``v``."""
    presc.require(Variant.FIN_RMI).fit(base)
    excess = reduced_finite_excess(base, presc)
    conditions, a, b = _row_side(base, presc, excess)
    conditions.append(
        ordinary_majorization("leading-column-majorization", base.cmi[: presc.x], a)
    )
    conditions.append(generalized_majorization("row-majorization", presc.v, base.rmi, b))
    return FeasibilityReport.from_conditions(
        Variant.FIN_RMI,
        conditions,
        constants={"reduced_finite_excess": excess},
        aux_sequences={"column": a, "row": b},
    )
