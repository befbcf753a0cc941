"""
Assemble a full prescription from a partial one and re-check it.

Every partial predicate is backed by a reduction to the full one: the free
invariants are either fixed directly (column indices ``d_i = c_{i+x}``,
multiplicities ``f_i = e_{i-x}``, row indices ``v = u`` merged with the row
bounding sequence) or built by a chain construction. The assembled
prescription must pass the full predicate whenever the partial one did;
anything else is a bug.
"""

from dataclasses import dataclass

from loguru import logger

from polycomplete.completion.chains import (
    construct_beta_chain,
    construct_f_chain,
    construct_gamma_chain,
    pair_chains,
)
from polycomplete.completion.full import check_full
from polycomplete.completion.prescription import Prescription, Variant
from polycomplete.completion.registry import check
from polycomplete.completion.report import ChainConstruction, FeasibilityReport
from polycomplete.completion.terms import b_sequence, finite_pair, infinite_pair
from polycomplete.exceptions import (
    AssemblyMismatchError,
    InvalidInputError,
    NotFeasibleError,
)
from polycomplete.seqcomb.sequences import Partition, seq_union
from polycomplete.structmat.eigenstructure import Eigenstructure


@dataclass(frozen=True)
class Assembly:
    """A full prescription together with the steps that produced it.

    Attributes:
        full: The assembled ``Full`` prescription.
        stages: The intermediate prescriptions, starting with the input.
        chains: Chains built along the way.
    """

    full: Prescription
    stages: tuple[Prescription, ...]
    chains: tuple[ChainConstruction, ...]


def _row_indices_from_columns(
    base: Eigenstructure, presc: Prescription, pairing, base_sum: int
) -> Partition:
    """``u`` merged with the row bounding sequence led by the column surplus."""
    x, z = presc.x, presc.z
    lead = sum(base.cmi) - sum(presc.d) + base_sum + x * base.grade
    b = b_sequence(pairing, x, z, lead)
    try:
        return seq_union(Partition(base.rmi), sorted(b, reverse=True))
    except InvalidInputError as e:
        raise AssemblyMismatchError(
            f"Row bounding sequence {b} is not a valid set of row minimal indices.\n"
            f"  Details: {e}"
        ) from None


def _reduce(base: Eigenstructure, presc: Prescription) -> Prescription:
    """One reduction step toward a prescription with a chain construction."""
    v = presc.variant
    if v is Variant.CMI:
        fs = (0,) * presc.x + tuple(base.es)
        return Prescription(Variant.INF_CMI, presc.z, presc.x, f=fs, d=presc.d)
    if v is Variant.INF_CMI:
        pairing = infinite_pair(base.es, presc.f)
        rows = _row_indices_from_columns(base, presc, pairing, sum(base.es))
        return Prescription(
            Variant.INF_SING, presc.z, presc.x, f=presc.f, d=presc.d, v=rows
        )
    if v is Variant.FIN_CMI:
        pairing = finite_pair(base.alphas, presc.beta)
        rows = _row_indices_from_columns(base, presc, pairing, sum(base.alpha_degrees))
        return Prescription(
            Variant.FIN_SING, presc.z, presc.x, beta=presc.beta, d=presc.d, v=rows
        )

    trailing = Partition(base.cmi[presc.x :])
    if v is Variant.INF_RMI:
        return Prescription(
            Variant.INF_SING, presc.z, presc.x, f=presc.f, d=trailing, v=presc.v
        )
    if v is Variant.FIN_RMI:
        return Prescription(
            Variant.FIN_SING, presc.z, presc.x, beta=presc.beta, d=trailing, v=presc.v
        )
    if v is Variant.RMI:
        return Prescription(Variant.SING, presc.z, presc.x, d=trailing, v=presc.v)
    raise AssemblyMismatchError(f"No reduction is defined for {v.value}.")


def assemble_full(base: Eigenstructure, presc: Prescription) -> Assembly:
    """
    Complete a feasible partial prescription to a ``Full`` one.

    Args:
        base: Eigenstructure of the matrix being completed.
        presc: A prescription of any variant.

    Returns:
        The assembled prescription with its stages and chain constructions.

    Raises:
        NotFeasibleError: If the input prescription is infeasible.
        FieldObstructionError: If a required chain does not exist over the
            working field.
        AssemblyMismatchError: If a reduction step turns a feasible
            prescription into an infeasible one.
    """
    presc.fit(base)
    report = check(base, presc)
    if not report.feasible:
        raise NotFeasibleError(
            f"No {presc.variant.value} completion exists: {', '.join(report.failed)} failed."
        )

    stages = [presc]
    while stages[-1].variant not in {
        Variant.FULL,
        Variant.INF_SING,
        Variant.FIN_SING,
        Variant.SING,
    }:
        nxt = _reduce(base, stages[-1]).fit(base)
        staged = check(base, nxt)
        logger.debug("Reduced {} to {}", stages[-1].variant.value, nxt.format())
        if not staged.feasible:
            raise AssemblyMismatchError(
                f"Reducing {stages[-1].variant.value} to {nxt.variant.value} produced an "
                f"infeasible prescription ({', '.join(staged.failed)} failed).\n"
                f"  Found: ({nxt.format()})"
            )
        stages.append(nxt)

    last = stages[-1]
    chains: list[ChainConstruction] = []
    if last.variant is Variant.FULL:
        full = last
    elif last.variant is Variant.INF_SING:
        beta = construct_beta_chain(base, last)
        chains.append(beta)
        gamma = pair_chains(last.f, beta.chain)
    elif last.variant is Variant.FIN_SING:
        fchain = construct_f_chain(base, last)
        chains.append(fchain)
        gamma = pair_chains(fchain.chain, last.beta)
    else:
        homogeneous = construct_gamma_chain(base, last)
        chains.append(homogeneous)
        gamma = homogeneous.chain

    if last.variant is not Variant.FULL:
        full = Prescription(Variant.FULL, last.z, last.x, gamma=gamma, d=last.d, v=last.v)

    stages.append(full)
    return Assembly(full.fit(base), tuple(stages), tuple(chains))


def witness_to_full(base: Eigenstructure, presc: Prescription) -> FeasibilityReport:
    """
    Re-check a feasible partial prescription through the full predicate.

    Returns:
        The full predicate's report on the assembled prescription; always
        feasible.

    Raises:
        NotFeasibleError: If the input prescription is infeasible.
        FieldObstructionError: If a chain does not exist over the working field.
        AssemblyMismatchError: If the assembled prescription is rejected.
    """
    assembly = assemble_full(base, presc)
    report = check_full(base, assembly.full)
    if not report.feasible:
        raise AssemblyMismatchError(
            f"The {presc.variant.value} prescription is feasible, but its assembled "
            f"full prescription is not ({', '.join(report.failed)} failed).\n"
            f"  Found: ({assembly.full.format()})"
        )
    return report
