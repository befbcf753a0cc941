"""
Completions with the partial multiplicities of infinity prescribed.

``f`` is prescribed together with both minimal-index families
(``InfSing``), with the column ones only (``InfCmi``) or with the row ones
only (``InfRmi``). The base factors enter through ``max(e_k, f_i)``.
"""

from collections.abc import Sequence

from loguru import logger

from polycomplete.completion.prescription import Prescription, Variant
from polycomplete.completion.report import (
    FeasibilityReport,
    compare,
    generalized_majorization,
    ordinary_majorization,
    structural,
)
from polycomplete.completion.terms import (
    a_sequence,
    b_sequence,
    infinite_pair,
    tail_sum,
)
from polycomplete.structmat.eigenstructure import Eigenstructure


def infinite_interlacing(es: Sequence[int], fs: Sequence[int], z: int) -> str | None:
    """First violation of ``f_i <= e_i <= f_{i+z}`` (``f`` past the end is infinite)."""
    for i, e in enumerate(es, start=1):
        if fs[i - 1] > e:
            return f"f_{i} = {fs[i - 1]} exceeds e_{i} = {e}"
        if i + z <= len(fs) and e > fs[i + z - 1]:
            return f"e_{i} = {e} exceeds f_{i + z} = {fs[i + z - 1]}"
    return None


def infinite_excess(base: Eigenstructure, presc: Prescription) -> int:
    """``sum f - sum e + sum d - sum c + sum v - sum u - x*grade``."""
    return (
        sum(presc.f)
        - sum(base.es)
        + sum(presc.d)
        - sum(base.cmi)
        + sum(presc.v)
        - sum(base.rmi)
        - presc.x * base.grade
    )


def reduced_infinite_excess(base: Eigenstructure, presc: Prescription) -> int:
    """The excess with the ``x`` largest column indices standing in for ``d``."""
    return (
        sum(presc.f)
        - sum(base.es)
        - sum(base.cmi[: presc.x])
        + sum(presc.v)
        - sum(base.rmi)
        - presc.x * base.grade
    )


def _row_side(base: Eigenstructure, presc: Prescription, excess: int):
    """Conditions shared by the two predicates that prescribe ``v``."""
    x, z, grade = presc.x, presc.z, base.grade
    pairing = infinite_pair(base.es, presc.f)
    row_surplus = sum(presc.v) - sum(base.rmi)
    own = sum(presc.f)
    tail = base.alpha_degrees

    a = a_sequence(pairing, x, grade, row_surplus + own - excess - grade)
    b = b_sequence(pairing, x, z, row_surplus + own, tail, excess)
    conditions = [
        compare("nonzero-row-indices", presc.eta_bar, base.eta, ">="),
        structural("infinite-interlacing", infinite_interlacing(base.es, presc.f, z)),
        compare("excess-bound", excess, tail_sum(tail, z - x), "<="),
        compare(
            "row-excess",
            row_surplus,
            max(0, excess) + pairing.degree_sum(x) - own,
            ">=",
        ),
    ]
    return conditions, a, b


def check_inf_sing(base: Eigenstructure, presc: Prescription) -> FeasibilityReport:
    """
    Decide a completion with prescribed ``f``, ``d`` and ``v``.

    Necessity holds over any field. Sufficiency holds over any field when the
    excess is nonpositive; otherwise it needs an algebraically closed field,
    and the report carries a field caveat.

    Raises:
        InvalidPrescriptionError: If the prescription is not an ``InfSing``
            one or does not fit the base.
    """
    presc.require(Variant.INF_SING).fit(base)
    excess = infinite_excess(base, presc)
    conditions, a, b = _row_side(base, presc, excess)
    conditions.append(
        generalized_majorization("column-majorization", base.cmi, presc.d, a)
    )
    conditions.append(generalized_majorization("row-majorization", presc.v, base.rmi, b))
    logger.debug("InfSing: A={}, a={}, b={}", excess, a, b)
    return FeasibilityReport.from_conditions(
        Variant.INF_SING,
        conditions,
        constants={"infinite_excess": excess},
        aux_sequences={"column": a, "row": b},
        caveat_on="infinite_excess",
    )


def column_side_sequence(
    base: Eigenstructure, presc: Prescription, pairing, base_sum: int
) -> tuple[int, ...]:
    """Column bounding sequence led by ``sum c - sum d + base_sum + (x-1)*grade``."""
    x, grade = presc.x, base.grade
    lead = sum(base.cmi) - sum(presc.d) + base_sum + (x - 1) * grade
    return a_sequence(pairing, x, grade, lead)


def check_inf_cmi(base: Eigenstructure, presc: Prescription) -> FeasibilityReport:
    """
    Decide a completion with prescribed ``f`` and ``d``. Valid over any field.

    Raises:
        InvalidPrescriptionError: If the prescription is not an ``InfCmi``
            one or does not fit the base.
    """
    presc.require(Variant.INF_CMI).fit(base)
    x, z = presc.x, presc.z
    pairing = infinite_pair(base.es, presc.f)
    a = column_side_sequence(base, presc, pairing, sum(base.es))
    conditions = [
        structural("infinite-interlacing", infinite_interlacing(base.es, presc.f, z)),
        compare(
            "column-excess",
            sum(base.cmi) - sum(presc.d),
            pairing.degree_sum(x) - sum(base.es) - x * base.grade,
            ">=",
        ),
        generalized_majorization("column-majorization", base.cmi, presc.d, a),
    ]
    return FeasibilityReport.from_conditions(
        Variant.INF_CMI, conditions, aux_sequences={"column": a}
    )


def check_inf_rmi(base: Eigenstructure, presc: Prescription) -> FeasibilityReport:
    """
    Decide a completion with prescribed ``f`` and ``v``.

    The ``x`` new column indices are bounded by ordinary majorization of the
    ``x`` largest base column indices. Carries a field caveat when feasible
    with a positive reduced excess.

    Raises:
        InvalidPrescriptionError: If the prescription is not an ``InfRmi``
            one or does not fit the base.
    """
    presc.require(Variant.INF_RMI).fit(base)
    excess = reduced_infinite_excess(base, presc)
    conditions, a, b = _row_side(base, presc, excess)
    conditions.append(
        ordinary_majorization("leading-column-majorization", base.cmi[: presc.x], a)
    )
    conditions.append(generalized_majorization("row-majorization", presc.v, base.rmi, b))
    logger.debug("InfRmi: reduced A={}, a={}, b={}", excess, a, b)
    return FeasibilityReport.from_conditions(
        Variant.INF_RMI,
        conditions,
        constants={"reduced_infinite_excess": excess},
        aux_sequences={"column": a, "row": b},
        caveat_on="reduced_infinite_excess",
    )
