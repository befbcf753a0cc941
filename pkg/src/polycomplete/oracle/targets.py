"""
Candidate prescriptions for testing sufficiency.

Integer coordinates are bounded by the Index Sum of the completed matrix:
every minimal index and every multiplicity of a rank ``r + x`` completion
contributes to a total of ``(r + x) * grade``. Polynomial coordinates cannot
be listed exhaustively; they are drawn from the chains that were actually
reached, plus the base chains shifted by ``x``.
"""

from collections.abc import Iterable, Iterator

from loguru import logger
from more_itertools import ilen, take, unique_everseen

from polycomplete.algebra.homog import HomogFactor
from polycomplete.algebra.poly import one_poly
from polycomplete.completion.prescription import Prescription, Variant
from polycomplete.exceptions import InvalidInputError
from polycomplete.structmat.eigenstructure import Eigenstructure

_INTEGER_FIELDS = ("f", "d", "v")


def bounded_partitions(
    length: int, total: int, cap: int | None = None
) -> Iterator[tuple[int, ...]]:
    """
    Nonincreasing tuples of ``length`` nonnegative integers with sum at most ``total``.

    Examples:
        >>> list(bounded_partitions(2, 2))
        [(0, 0), (1, 0), (1, 1), (2, 0)]
        >>> list(bounded_partitions(0, 3))
        [()]
    """
    if length == 0:
        yield ()
        return
    top = total if cap is None else min(cap, total)
    for first in range(top + 1):
        for rest in bounded_partitions(length - 1, total - first, first):
            yield (first, *rest)


def _chain_sources(
    base: Eigenstructure, x: int, reached: Iterable[Prescription]
) -> tuple[list[tuple], list[tuple]]:
    one = one_poly(base.field)
    betas = [(one,) * x + tuple(base.alphas)]
    gammas = [(HomogFactor.unit(base.field),) * x + base.phis]
    for presc in reached:
        if presc.x != x:
            continue
        if presc.beta is not None:
            betas.append(presc.beta)
        if presc.gamma is not None:
            gammas.append(presc.gamma)
    return list(unique_everseen(betas)), list(unique_everseen(gammas))


def _integer_coordinates(names: list[str], lengths: dict[str, int], budget: int):
    """Joint choices of the integer coordinates whose sums stay within ``budget``."""
    if not names:
        yield {}
        return
    head, *tail = names
    for values in bounded_partitions(lengths[head], budget):
        # multiplicities are nondecreasing
        chosen = tuple(reversed(values)) if head == "f" else values
        for rest in _integer_coordinates(tail, lengths, budget - sum(values)):
            yield {head: chosen, **rest}


def _candidates(
    base: Eigenstructure, variant: Variant, z: int, reached: Iterable[Prescription]
) -> Iterator[Prescription]:
    reached = list(reached)
    for x in range(min(z, base.n - base.r) + 1):
        lengths = {
            "f": base.r + x,
            "d": base.n - base.r - x,
            "v": base.m + z - base.r - x,
        }
        names = [n for n in _INTEGER_FIELDS if n in variant.required]
        betas, gammas = _chain_sources(base, x, reached)
        chains: list[dict] = [{}]
        if "beta" in variant.required:
            chains = [{"beta": b} for b in betas]
        elif "gamma" in variant.required:
            chains = [{"gamma": g} for g in gammas]

        budget = (base.r + x) * base.grade
        for ints in _integer_coordinates(names, lengths, budget):
            for chain in chains:
                yield Prescription(variant, z, x, **ints, **chain).fit(base)


def candidate_targets(
    base: Eigenstructure,
    variant: Variant,
    z: int,
    reached: Iterable[Prescription] = (),
    limit: int = 2000,
) -> list[Prescription]:
    """
    Prescriptions of ``variant`` within Index Sum bounds, in a fixed order.

    Args:
        base: Eigenstructure of the matrix being completed.
        variant: The prescription variant.
        z: Rows of the completion.
        reached: Prescriptions already reached by completions; their chains
            seed the polynomial coordinates.
        limit: Largest number of candidates returned.

    Returns:
        Up to ``limit`` distinct prescriptions, ordered by rank increase. A
        warning reports how many candidates the limit dropped.

    Raises:
        InvalidInputError: If ``z`` is not positive or ``limit`` is negative.
    """
    if z < 1 or limit < 0:
        raise InvalidInputError(
            f"Expected z >= 1 and limit >= 0.\n  Found: (z={z}, limit={limit})"
        )
    variant = Variant(variant)
    candidates = _candidates(base, variant, z, reached)
    kept = take(limit, candidates)
    dropped = ilen(candidates)
    if dropped:
        logger.warning(
            "Kept {} {} targets; {} more within the Index Sum bounds were dropped.",
            limit,
            variant.value,
            dropped,
        )
    return kept
