from loguru import logger
from sympy import Poly

from polycomplete.algebra.field import field_of
from polycomplete.algebra.poly import coeff_key, divides, format_poly, poly_degree
from polycomplete.exceptions import FieldObstructionError, InvalidInputError


def irreducible_factors(q: Poly) -> list[Poly]:
    """Monic irreducible factors of a nonzero polynomial, repeated by multiplicity.

    Sorted by degree, then by ascending coefficients. sympy factors completely
    over GF(p) (squarefree, distinct-degree and equal-degree stages) and over
    the rationals.
    """
    _, factors = q.factor_list()
    out = []
    for f, k in factors:
        out.extend([f.monic()] * k)
    return sorted(out, key=coeff_key)


def _first_subset_of_degree(factors: list[Poly], target: int) -> list[int] | None:
    degrees = [poly_degree(f) for f in factors]
    suffix = [0] * (len(factors) + 1)
    for i in range(len(factors) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + degrees[i]

    chosen: list[int] = []

    # Include-before-exclude over the sorted factors yields the
    # lexicographically smallest subset.
    def search(i: int, remaining: int) -> bool:
        if remaining == 0:
            return True
        if i == len(factors) or suffix[i] < remaining:
            return False
        if degrees[i] <= remaining:
            chosen.append(i)
            if search(i + 1, remaining - degrees[i]):
                return True
            chosen.pop()
        j = i + 1
        while j < len(factors) and factors[j] == factors[i]:
            j += 1
        return search(j, remaining)

    return chosen if search(0, target) else None


def divisor_of_degree(lo: Poly, hi: Poly, w: int) -> Poly:
    """
    Find a monic ``tau`` with ``lo | tau | hi`` and ``deg(tau) = w``.

    The cofactor ``hi / lo`` is split into irreducibles and a subset of them
    with total degree ``w - deg(lo)`` is multiplied onto ``lo``. Among valid
    subsets, the one whose sorted factor list is lexicographically smallest
    by (degree, coefficients) is chosen.

    Args:
        lo: Monic lower bound of the divisibility chain.
        hi: Monic upper bound, a multiple of ``lo``.
        w: Required degree, ``deg(lo) <= w <= deg(hi)``.

    Returns:
        The monic polynomial ``tau``.

    Raises:
        InvalidInputError: If ``lo`` does not divide ``hi`` or ``w`` is out of range.
        FieldObstructionError: If no divisor of degree ``w`` exists over the field.

    Examples:
        >>> from polycomplete.algebra.field import PrimeField
        >>> from polycomplete.algebra.poly import make_poly, one_poly
        >>> gf5 = PrimeField(p=5)
        >>> format_poly(divisor_of_degree(one_poly(gf5), make_poly(gf5, [1, 0, 1]), 1))
        's+2'
    """
    if lo.is_zero or hi.is_zero or not divides(lo, hi):
        raise InvalidInputError(
            f"Expected nonzero lo | hi.\n  Found: (lo={format_poly(lo)}, hi={format_poly(hi)})"
        )
    lo_deg, hi_deg = poly_degree(lo), poly_degree(hi)
    if not lo_deg <= w <= hi_deg:
        raise InvalidInputError(
            f"Required degree {w} is outside [{lo_deg}, {hi_deg}]."
        )
    if w == lo_deg:
        return lo.monic()
    if w == hi_deg:
        return hi.monic()

    factors = irreducible_factors(hi.exquo(lo))
    chosen = _first_subset_of_degree(factors, w - lo_deg)
    if chosen is None:
        field = field_of(hi.domain)
        logger.debug(
            "No subset of {} reaches degree {}.",
            [format_poly(f) for f in factors],
            w - lo_deg,
        )
        raise FieldObstructionError(
            f"No monic divisor of degree {w} between {format_poly(lo)} and "
            f"{format_poly(hi)} exists over {field.label}.\n"
            "💡 Hint: The verdict relies on an algebraically closed field; "
            "the cofactor does not split far enough here."
        )

    tau = lo
    for i in chosen:
        tau = tau * factors[i]
    return tau.monic()
