"""
Column completions ``[P W]`` decided through their transposes.

Adding columns to ``P`` is adding rows to ``P^T``. Transposition keeps the
finite and infinite structure and exchanges the two families of minimal
indices, so a prescription for the column completion becomes a row
prescription with ``d`` and ``v`` swapped and the column/row flavoured
variants exchanged.
"""

from polycomplete.completion.prescription import Prescription, Variant
from polycomplete.completion.registry import check
from polycomplete.completion.report import FeasibilityReport
from polycomplete.structmat.eigenstructure import Eigenstructure

TRANSPOSED_VARIANT: dict[Variant, Variant] = {
    Variant.FULL: Variant.FULL,
    Variant.INF_SING: Variant.INF_SING,
    Variant.FIN_SING: Variant.FIN_SING,
    Variant.SING: Variant.SING,
    Variant.INF_CMI: Variant.INF_RMI,
    Variant.INF_RMI: Variant.INF_CMI,
    Variant.FIN_CMI: Variant.FIN_RMI,
    Variant.FIN_RMI: Variant.FIN_CMI,
    Variant.CMI: Variant.RMI,
    Variant.RMI: Variant.CMI,
}


def transpose_prescription(presc: Prescription) -> Prescription:
    """The same targets seen from the transposed matrix."""
    return Prescription(
        TRANSPOSED_VARIANT[presc.variant],
        presc.z,
        presc.x,
        f=presc.f,
        beta=presc.beta,
        gamma=presc.gamma,
        d=presc.v,
        v=presc.d,
    )


def check_columns(base: Eigenstructure, presc: Prescription) -> FeasibilityReport:
    """
    Decide feasibility of a column completion ``[P W]`` with ``W`` of ``z`` columns.

    Args:
        base: Eigenstructure of ``P``.
        presc: Targets for ``[P W]``; ``d`` has ``n + z - r - x`` entries and
            ``v`` has ``m - r - x``.

    Returns:
        The row predicate's report on ``P^T``, whose variant is the
        transposed one.
    """
    return check(base.transpose(), transpose_prescription(presc))
