"""
Completions with only minimal indices prescribed.

No factor chain is prescribed, so the pairing degree sums vanish and the
homogeneous invariant factor degrees of the base bound the excess.
"""

from loguru import logger

from polycomplete.completion.infinite import column_side_sequence
from polycomplete.completion.prescription import Prescription, Variant
from polycomplete.completion.report import (
    FeasibilityReport,
    compare,
    generalized_majorization,
)
from polycomplete.completion.terms import a_sequence, b_sequence, tail_sum, zero_pair
from polycomplete.structmat.eigenstructure import Eigenstructure


def singular_excess(base: Eigenstructure, presc: Prescription) -> int:
    """``sum d - sum c + sum v - sum u - x*grade``."""
    return (
        sum(presc.d)
        - sum(base.cmi)
        + sum(presc.v)
        - sum(base.rmi)
        - presc.x * base.grade
    )


def reduced_singular_excess(base: Eigenstructure, presc: Prescription) -> int:
    """``-sum(c_1..c_x) + sum v - sum u - x*grade``."""
    return (
        -sum(base.cmi[: presc.x])
        + sum(presc.v)
        - sum(base.rmi)
        - presc.x * base.grade
    )


def _row_side(base: Eigenstructure, presc: Prescription, excess: int):
    x, z = presc.x, presc.z
    pairing = zero_pair(base.r, x)
    row_surplus = sum(presc.v) - sum(base.rmi)
    tail = tuple(phi.degree for phi in base.phis)
    b = b_sequence(pairing, x, z, row_surplus, tail, excess)
    conditions = [
        compare("nonzero-row-indices", presc.eta_bar, base.eta, ">="),
        compare("excess-bound", excess, tail_sum(tail, z - x), "<="),
        compare("row-excess", row_surplus, max(0, excess), ">="),
    ]
    return conditions, pairing, b


def check_sing(base: Eigenstructure, presc: Prescription) -> FeasibilityReport:
    """
    Decide a completion with prescribed ``d`` and ``v``.

    Carries a field caveat when feasible with a positive excess.

    Raises:
        InvalidPrescriptionError: If the prescription is not a ``Sing`` one
            or does not fit the base.
    """
    presc.require(Variant.SING).fit(base)
    excess = singular_excess(base, presc)
    conditions, pairing, b = _row_side(base, presc, excess)
    row_surplus = sum(presc.v) - sum(base.rmi)
    a = a_sequence(pairing, presc.x, base.grade, row_surplus - excess - base.grade)
    conditions += [
        generalized_majorization("column-majorization", base.cmi, presc.d, a),
        generalized_majorization("row-majorization", presc.v, base.rmi, b),
    ]
    logger.debug("Sing: E={}, a={}, b={}", excess, a, b)
    return FeasibilityReport.from_conditions(
        Variant.SING,
        conditions,
        constants={"singular_excess": excess},
        aux_sequences={"column": a, "row": b},
        caveat_on="singular_excess",
    )


def check_rmi(base: Eigenstructure, presc: Prescription) -> FeasibilityReport:
    """Decide a completion with prescribed ``v``. Caveat as for :func:`check_sing`."""
    presc.require(Variant.RMI).fit(base)
    excess = reduced_singular_excess(base, presc)
    conditions, _, b = _row_side(base, presc, excess)
    conditions.append(generalized_majorization("row-majorization", presc.v, base.rmi, b))
    return FeasibilityReport.from_conditions(
        Variant.RMI,
        conditions,
        constants={"reduced_singular_excess": excess},
        aux_sequences={"row": b},
        caveat_on="reduced_singular_excess",
    )


def check_cmi(base: Eigenstructure, presc: Prescription) -> FeasibilityReport:
    """Decide a completion with prescribed ``d``. Valid over any field."""
    presc.require(Variant.CMI).fit(base)
    x = presc.x
    a = column_side_sequence(base, presc, zero_pair(base.r, x), 0)
    conditions = [
        compare(
            "column-excess",
            sum(base.cmi) - sum(presc.d),
            -x * base.grade,
            ">=",
        ),
        generalized_majorization("column-majorization", base.cmi, presc.d, a),
    ]
    return FeasibilityReport.from_conditions(
        Variant.CMI, conditions, aux_sequences={"column": a}
    )
