"""
Degree sums and bounding sequences shared by every completion predicate.

Each predicate pairs the base factor ``k`` with the target factor ``i``
through a degree function: the degree of a homogeneous lcm, of a finite lcm,
a maximum of infinite multiplicities, or nothing at all. Base factors with
``k < 1`` are units. The sums only ever reach base indices up to the rank;
anything beyond raises :class:`SentinelArithmeticError`.

The bounding sequences all have the same shape. With ``S(shift, upto)`` the
sum of ``pair(i + shift, i)`` for ``i = 1..upto``::

    a_1 = lead_a - S(1 - x, r + x - 1)
    a_j = S(j - 1 - x, r + x - j + 1) - S(j - x, r + x - j) - d
    b_1 = lead_b + clip(1) - S(-x - 1, r + x)
    b_j = clip(j) - clip(j - 1) + S(1 - x - j, r + x) - S(-x - j, r + x)

where ``clip(j) = min(0, T(j) - excess)`` and ``T(j)`` sums the last ``j``
entries of a tail sequence of the base.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass

from sympy import Poly

from polycomplete.algebra.homog import HomogFactor, hlcm_deg
from polycomplete.algebra.poly import poly_degree, poly_lcm
from polycomplete.exceptions import SentinelArithmeticError


@dataclass(frozen=True)
class Pairing:
    """
    Degree of the pairing between base factor ``k`` and target factor ``i``.

    Attributes:
        r: Rank of the base; the largest admissible base index.
        width: Number of target factors, ``r + x``.
        degree: ``degree(k, i)``; must treat ``k < 1`` as the unit factor.
    """

    r: int
    width: int
    degree: Callable[[int, int], int]

    def term(self, k: int, i: int) -> int:
        if k > self.r or not 1 <= i <= self.width:
            raise SentinelArithmeticError(
                f"Pairing of base factor {k} with target factor {i} is out of range "
                f"(r={self.r}, r+x={self.width})."
            )
        return self.degree(k, i)

    def shifted_sum(self, shift: int, upto: int) -> int:
        """``sum(pair(i + shift, i) for i in 1..upto)``."""
        if upto + shift > self.r:
            raise SentinelArithmeticError(
                f"Shifted sum S({shift}, {upto}) reaches base factor {upto + shift} > r={self.r}."
            )
        return sum(self.term(i + shift, i) for i in range(1, upto + 1))

    def degree_sum(self, x: int) -> int:
        """``sum(pair(i - x, i) for i in 1..r+x)``, the aligned pairing."""
        return self.shifted_sum(-x, self.r + x)


def homogeneous_pair(
    phis: Sequence[HomogFactor], gammas: Sequence[HomogFactor]
) -> Pairing:
    """``deg hlcm(phi_k, gamma_i)``."""

    def degree(k: int, i: int) -> int:
        gamma = gammas[i - 1]
        return gamma.degree if k < 1 else hlcm_deg(phis[k - 1], gamma)

    return Pairing(len(phis), len(gammas), degree)


def infinite_pair(es: Sequence[int], fs: Sequence[int]) -> Pairing:
    """``max(e_k, f_i)``."""

    def degree(k: int, i: int) -> int:
        return fs[i - 1] if k < 1 else max(es[k - 1], fs[i - 1])

    return Pairing(len(es), len(fs), degree)


def finite_pair(alphas: Sequence[Poly], betas: Sequence[Poly]) -> Pairing:
    """``deg lcm(alpha_k, beta_i)``."""

    def degree(k: int, i: int) -> int:
        beta = betas[i - 1]
        if k < 1:
            return poly_degree(beta)
        return poly_degree(poly_lcm(alphas[k - 1], beta))

    return Pairing(len(alphas), len(betas), degree)


def zero_pair(r: int, x: int) -> Pairing:
    """The pairing of the singular-structure predicates: every term vanishes."""
    return Pairing(r, r + x, lambda k, i: 0)


def tail_sum(tail: Sequence[int], j: int) -> int:
    """Sum of the last ``j`` entries of ``tail``; clamps to the whole sequence."""
    if j <= 0:
        return 0
    return sum(tail[max(0, len(tail) - j) :])


def a_sequence(pairing: Pairing, x: int, d: int, lead: int) -> tuple[int, ...]:
    """The column bounding sequence ``(a_1, ..., a_x)``; empty when ``x = 0``."""
    if x == 0:
        return ()
    r = pairing.r
    seq = [lead - pairing.shifted_sum(1 - x, r + x - 1)]
    for j in range(2, x + 1):
        seq.append(
            pairing.shifted_sum(j - 1 - x, r + x - j + 1)
            - pairing.shifted_sum(j - x, r + x - j)
            - d
        )
    return tuple(seq)


def b_sequence(
    pairing: Pairing,
    x: int,
    z: int,
    lead: int,
    tail: Sequence[int] = (),
    excess: int = 0,
) -> tuple[int, ...]:
    """The row bounding sequence ``(b_1, ..., b_{z-x})``; empty when ``x = z``."""
    width = pairing.r + x

    def clip(j: int) -> int:
        return min(0, tail_sum(tail, j) - excess)

    seq = []
    for j in range(1, z - x + 1):
        if j == 1:
            head = lead + clip(1) - pairing.shifted_sum(-x - 1, width)
        else:
            head = (
                clip(j)
                - clip(j - 1)
                + pairing.shifted_sum(1 - x - j, width)
                - pairing.shifted_sum(-x - j, width)
            )
        seq.append(head)
    return tuple(seq)
