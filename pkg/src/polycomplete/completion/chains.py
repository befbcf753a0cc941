"""
Chains that complete a partial prescription to a full one.

When a factor family is not prescribed, a feasible prescription still has to
be backed by some chain for it. The chains are built the same way for all
three families:

- Positive excess: drop the ``g`` smallest base factors, where ``g`` is the
  least count of trailing base degrees covering the excess, and insert at
  position ``h + x`` a factor ``tau`` of degree ``w`` sitting between two
  consecutive base factors.
- Nonpositive excess: shift the base chain by ``x`` and enlarge the last
  factor by the missing degree.

Inserting ``tau`` needs a divisor of a given degree, which may not exist over
the working field; that is the only way a construction can fail on a
feasible prescription.
"""

from collections.abc import Callable, Sequence
from typing import TypeVar

from loguru import logger

from polycomplete.algebra.factor import divisor_of_degree
from polycomplete.algebra.homog import HomogFactor
from polycomplete.algebra.poly import format_poly, one_poly, poly_degree, s_power
from polycomplete.completion.finite import check_fin_sing
from polycomplete.completion.infinite import check_inf_sing
from polycomplete.completion.prescription import Prescription, Variant
from polycomplete.completion.report import ChainConstruction, FeasibilityReport
from polycomplete.completion.singular import check_sing
from polycomplete.completion.terms import tail_sum
from polycomplete.exceptions import FieldObstructionError, InvalidInputError, NotFeasibleError
from polycomplete.structmat.eigenstructure import Eigenstructure

T = TypeVar("T")


def insertion_plan(degrees: Sequence[int], excess: int) -> tuple[int, int, int]:
    """
    Positions and degree of the inserted factor for a positive excess.

    Args:
        degrees: Degrees of the base factors, nondecreasing.
        excess: The positive excess to absorb.

    Returns:
        ``(g, h, w)``: ``g`` is the least number of trailing degrees whose sum
        covers the excess, ``h`` the least position from ``g`` on whose
        factor covers what is left, and ``w`` the degree of the new factor.

    Raises:
        NotFeasibleError: If the trailing degrees cannot cover the excess.

    Examples:
        >>> insertion_plan([0, 2], 1)
        (1, 2, 1)
        >>> insertion_plan([1, 1, 3], 4)
        (2, 2, 0)
        >>> insertion_plan([0, 0, 3], 2)
        (1, 3, 1)
    """
    r = len(degrees)

    def deg(k: int) -> int:
        return degrees[k - 1] if k >= 1 else 0

    g = next((k for k in range(r + 1) if excess <= tail_sum(degrees, k)), None)
    if g is None or excess <= 0:
        raise NotFeasibleError(
            f"An excess of {excess} cannot be absorbed by degrees {tuple(degrees)}."
        )
    rest = excess - tail_sum(degrees, g - 1)
    h = next(k for k in range(g, r + 1) if rest <= deg(k - g + 1))
    w = deg(h - g) + deg(h - g + 1) - rest
    return g, h, w


def _insert(
    base: Callable[[int], T], r: int, x: int, g: int, h: int, tau: T
) -> tuple[T, ...]:
    """``base(i - x - g)`` up to ``h + x - 1``, then ``tau``, then ``base(i - x - g + 1)``."""
    chain = []
    for i in range(1, r + x + 1):
        if i < h + x:
            chain.append(base(i - x - g))
        elif i == h + x:
            chain.append(tau)
        else:
            chain.append(base(i - x - g + 1))
    return tuple(chain)


def _shift(base: Callable[[int], T], r: int, x: int, last: T) -> tuple[T, ...]:
    """``base(i - x)`` for ``i < r + x`` and ``last`` at the end."""
    if r + x == 0:
        return ()
    return tuple(base(i - x) for i in range(1, r + x)) + (last,)


def _feasible(report: FeasibilityReport | None, check, base, presc) -> FeasibilityReport:
    report = report or check(base, presc)
    if not report.feasible:
        raise NotFeasibleError(
            f"No {presc.variant.value} completion exists: "
            f"{', '.join(report.failed)} failed.\n"
            "💡 Hint: Chains are only constructed for feasible prescriptions."
        )
    return report


def construct_beta_chain(
    base: Eigenstructure, presc: Prescription, report: FeasibilityReport | None = None
) -> ChainConstruction:
    """
    Invariant factors for a feasible prescription of ``f``, ``d`` and ``v``.

    Paired with ``f`` they form homogeneous factors that pass the full
    predicate. For a nonpositive excess ``A`` the last factor becomes
    ``alpha_r * s^(-A)``.

    Args:
        base: Eigenstructure of the matrix being completed.
        presc: An ``InfSing`` prescription.
        report: Its feasibility report, computed when omitted.

    Raises:
        NotFeasibleError: If the prescription is infeasible.
        FieldObstructionError: If the inserted factor does not exist over the
            working field.
    """
    presc.require(Variant.INF_SING).fit(base)
    report = _feasible(report, check_inf_sing, base, presc)
    excess = report.constants["infinite_excess"]
    r, x = base.r, presc.x
    one = one_poly(base.field)

    def alpha(k: int):
        return base.alphas[k - 1] if k >= 1 else one

    if excess <= 0:
        tau = s_power(base.field, -excess)
        chain = _shift(alpha, r, x, alpha(r) * tau)
        logger.debug("beta-chain: A={} <= 0, last factor times {}", excess, format_poly(tau))
        return ChainConstruction("beta", "nonpositive", chain, tau=tau)

    g, h, w = insertion_plan(base.alpha_degrees, excess)
    tau = divisor_of_degree(alpha(h - g), alpha(h - g + 1), w)
    logger.debug("beta-chain: A={}, g={}, h={}, w={}, tau={}", excess, g, h, w, format_poly(tau))
    chain = _insert(alpha, r, x, g, h, tau)
    return ChainConstruction("beta", "positive", chain, g=g, h=h, w=w, tau=tau)


def construct_f_chain(
    base: Eigenstructure, presc: Prescription, report: FeasibilityReport | None = None
) -> ChainConstruction:
    """
    Partial multiplicities of infinity for a feasible ``FinSing`` prescription.

    Integers always exist, so this never meets a field obstruction.

    Raises:
        NotFeasibleError: If the prescription is infeasible.
    """
    presc.require(Variant.FIN_SING).fit(base)
    report = _feasible(report, check_fin_sing, base, presc)
    excess = report.constants["finite_excess"]
    r, x = base.r, presc.x

    def e(k: int) -> int:
        return base.es[k - 1] if k >= 1 else 0

    if excess <= 0:
        chain = _shift(e, r, x, e(r) - excess)
        return ChainConstruction("f", "nonpositive", chain, tau=-excess)

    g, h, w = insertion_plan(base.es, excess)
    logger.debug("f-chain: B={}, g={}, h={}, w={}", excess, g, h, w)
    chain = _insert(e, r, x, g, h, w)
    return ChainConstruction("f", "positive", chain, g=g, h=h, w=w, tau=w)


def homogeneous_divisor_of_degree(lo: HomogFactor, hi: HomogFactor, w: int) -> HomogFactor:
    """
    A homogeneous ``tau`` with ``lo | tau | hi`` and degree ``w``.

    The power of t is tried from ``hi.e`` down to ``lo.e``; the first power
    whose finite part can be completed to degree ``w`` wins.

    Raises:
        FieldObstructionError: If no power of t admits a finite part.
    """
    lo_deg, hi_deg = poly_degree(lo.alpha), poly_degree(hi.alpha)
    for e in range(hi.e, lo.e - 1, -1):
        k = w - e
        if not lo_deg <= k <= hi_deg:
            continue
        try:
            return HomogFactor(e, divisor_of_degree(lo.alpha, hi.alpha, k))
        except FieldObstructionError:
            continue
    raise FieldObstructionError(
        f"No homogeneous divisor of degree {w} between {lo} and {hi} exists over "
        f"this field.\n💡 Hint: The verdict relies on an algebraically closed field."
    )


def construct_gamma_chain(
    base: Eigenstructure, presc: Prescription, report: FeasibilityReport | None = None
) -> ChainConstruction:
    """
    Homogeneous invariant factors for a feasible ``Sing`` prescription.

    For a nonpositive excess ``E`` the last factor keeps its power of t and
    its finite part is multiplied by ``s^(-E)``.

    Raises:
        NotFeasibleError: If the prescription is infeasible.
        FieldObstructionError: If the inserted factor does not exist over the
            working field.
    """
    presc.require(Variant.SING).fit(base)
    report = _feasible(report, check_sing, base, presc)
    excess = report.constants["singular_excess"]
    r, x = base.r, presc.x
    unit = HomogFactor.unit(base.field)

    def phi(k: int) -> HomogFactor:
        return base.phis[k - 1] if k >= 1 else unit

    if excess <= 0:
        tau = s_power(base.field, -excess)
        last = phi(r)
        chain = _shift(phi, r, x, HomogFactor(last.e, last.alpha * tau))
        return ChainConstruction("gamma", "nonpositive", chain, tau=tau)

    g, h, w = insertion_plan([p.degree for p in base.phis], excess)
    tau = homogeneous_divisor_of_degree(phi(h - g), phi(h - g + 1), w)
    logger.debug("gamma-chain: E={}, g={}, h={}, w={}, tau={}", excess, g, h, w, tau)
    chain = _insert(phi, r, x, g, h, tau)
    return ChainConstruction("gamma", "positive", chain, g=g, h=h, w=w, tau=tau)


def pair_chains(fs: Sequence[int], betas: Sequence) -> tuple[HomogFactor, ...]:
    """Homogeneous factors ``(f_i, beta_i)``.

    Raises:
        InvalidInputError: If the chains differ in length.
    """
    if len(fs) != len(betas):
        raise InvalidInputError(
            f"Cannot pair {len(fs)} multiplicities with {len(betas)} invariant factors."
        )
    return tuple(HomogFactor(f, b) for f, b in zip(fs, betas, strict=True))
