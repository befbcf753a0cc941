"""
Feasibility of a row completion with the whole eigenstructure prescribed.

The completion ``[P; W]`` with ``W`` of ``z`` rows and rank increase ``x``
exists exactly when the homogeneous factors interlace, no positive row
minimal index is lost, both generalized majorizations hold and the aligned
homogeneous lcm degrees fit the degree budget.

Two equivalent ways of writing the bounding sequences and the degree budget
are available: ``primary`` measures the budget on the row side (new minus
old row minimal indices, with equality when ``x = 0``), ``alternate`` on the
column side (old minus new column minimal indices, with equality when
``x = z``).
"""

from typing import Literal

from loguru import logger

from polycomplete.algebra.homog import HomogFactor
from polycomplete.completion.prescription import Prescription, Variant
from polycomplete.completion.report import (
    FeasibilityReport,
    compare,
    generalized_majorization,
    structural,
)
from polycomplete.completion.terms import a_sequence, b_sequence, homogeneous_pair
from polycomplete.structmat.eigenstructure import Eigenstructure

Form = Literal["primary", "alternate"]


def homogeneous_interlacing(
    phis: tuple[HomogFactor, ...], gammas: tuple[HomogFactor, ...], z: int
) -> str | None:
    """First violation of ``gamma_i | phi_i | gamma_{i+z}``, or ``None``.

    ``gamma_k`` past the end of the chain is the zero factor.
    """
    for i, phi in enumerate(phis, start=1):
        if not gammas[i - 1].divides(phi):
            return f"gamma_{i} = {gammas[i - 1]} does not divide phi_{i} = {phi}"
        upper = gammas[i + z - 1] if i + z <= len(gammas) else None
        if not phi.divides(upper):
            return f"phi_{i} = {phi} does not divide gamma_{i + z} = {upper}"
    return None


def build_ab_full(
    base: Eigenstructure, presc: Prescription
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Bounding sequences with the degree budget taken on the row side."""
    presc.require(Variant.FULL).fit(base)
    pairing = homogeneous_pair(base.phis, presc.gamma)
    row_surplus = sum(presc.v) - sum(base.rmi)
    own = sum(g.degree for g in presc.gamma)
    a = a_sequence(pairing, presc.x, base.grade, row_surplus + own - base.grade)
    b = b_sequence(pairing, presc.x, presc.z, row_surplus + own)
    return a, b


def build_ab_alt(
    base: Eigenstructure, presc: Prescription
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Bounding sequences with the degree budget taken on the column side."""
    presc.require(Variant.FULL).fit(base)
    pairing = homogeneous_pair(base.phis, presc.gamma)
    x, d = presc.x, base.grade
    column_surplus = sum(base.cmi) - sum(presc.d) + sum(p.degree for p in base.phis)
    a = a_sequence(pairing, x, d, column_surplus + (x - 1) * d)
    b = b_sequence(pairing, x, presc.z, column_surplus + x * d)
    return a, b


def check_full(
    base: Eigenstructure, presc: Prescription, form: Form = "primary"
) -> FeasibilityReport:
    """
    Decide whether a completion with the prescribed eigenstructure exists.

    Valid over arbitrary fields.

    Args:
        base: Eigenstructure of the matrix being completed.
        presc: A ``Full`` prescription: homogeneous factors ``gamma``,
            column minimal indices ``d`` and row minimal indices ``v``.
        form: Which of the two equivalent condition sets to evaluate.

    Returns:
        A report with the five conditions and the ``column``/``row``
        bounding sequences.

    Raises:
        InvalidPrescriptionError: If the prescription is not a ``Full`` one or
            does not fit the base.
    """
    presc.require(Variant.FULL).fit(base)
    x, z = presc.x, presc.z
    pairing = homogeneous_pair(base.phis, presc.gamma)
    aligned = pairing.degree_sum(x)

    if form == "primary":
        a, b = build_ab_full(base, presc)
        budget = sum(presc.v) - sum(base.rmi) + sum(g.degree for g in presc.gamma)
        relation = "==" if x == 0 else "<="
    else:
        a, b = build_ab_alt(base, presc)
        budget = (
            sum(base.cmi)
            - sum(presc.d)
            + sum(p.degree for p in base.phis)
            + x * base.grade
        )
        relation = "==" if x == z else "<="
    logger.debug("Full ({}): a={}, b={}, aligned degree sum {}", form, a, b, aligned)

    conditions = [
        structural(
            "homogeneous-interlacing", homogeneous_interlacing(base.phis, presc.gamma, z)
        ),
        compare("nonzero-row-indices", presc.eta_bar, base.eta, ">="),
        generalized_majorization("column-majorization", base.cmi, presc.d, a),
        generalized_majorization("row-majorization", presc.v, base.rmi, b),
        compare("degree-sum", aligned, budget, relation),
    ]
    return FeasibilityReport.from_conditions(
        Variant.FULL, conditions, aux_sequences={"column": a, "row": b}
    )
