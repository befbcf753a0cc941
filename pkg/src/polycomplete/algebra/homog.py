from dataclasses import dataclass

from sympy import Poly

from polycomplete.algebra.field import field_of
from polycomplete.algebra.poly import (
    ascending_coeffs,
    divides,
    format_poly,
    one_poly,
    poly_degree,
    poly_lcm,
    poly_to_json,
    power_str,
)
from polycomplete.exceptions import InvalidInputError


@dataclass(frozen=True)
class HomogFactor:
    """A homogeneous invariant factor ``t^e * t^deg(alpha) * alpha(s/t)``.

    The pair ``(e, alpha)`` carries the infinite part (power of t) and the
    finite part (a monic polynomial in s). Divisibility between homogeneous
    factors is componentwise.
    """

    e: int
    alpha: Poly

    def __post_init__(self):
        if self.e < 0:
            raise InvalidInputError(
                f"Power of t must be nonnegative.\n  Found: (e={self.e})"
            )
        if self.alpha.is_zero or not self.alpha.is_monic:
            raise InvalidInputError(
                "Finite part of a homogeneous factor must be a nonzero monic "
                f"polynomial.\n  Found: (alpha={format_poly(self.alpha)})"
            )

    @classmethod
    def unit(cls, field) -> "HomogFactor":
        return cls(0, one_poly(field))

    @property
    def degree(self) -> int:
        return self.e + poly_degree(self.alpha)

    def divides(self, other: "HomogFactor | None") -> bool:
        """``None`` stands for the zero factor, which everything divides."""
        if other is None:
            return True
        return self.e <= other.e and divides(self.alpha, other.alpha)

    def to_json(self) -> dict:
        return {"e": self.e, "alpha": poly_to_json(self.alpha)}

    def format(self) -> str:
        """Render as a form in s and t, e.g. ``s+2t`` or ``t``."""
        k = poly_degree(self.alpha)
        field = field_of(self.alpha.domain)
        parts = []
        for j, c in reversed(list(enumerate(ascending_coeffs(self.alpha)))):
            if not c:
                continue
            mono = power_str("s", j) + power_str("t", k - j + self.e)
            coeff = field.show_scalar(c)
            if mono and coeff == "1":
                coeff = ""
            parts.append(f"{coeff}{mono}" or "1")
        return "+".join(parts).replace("+-", "-")

    def __str__(self) -> str:
        return self.format()


def hlcm_deg(phi: HomogFactor, gamma: HomogFactor) -> int:
    """Degree of the homogeneous lcm of two nonzero homogeneous factors.

    Returns ``max(phi.e, gamma.e) + deg(lcm(phi.alpha, gamma.alpha))``.
    """
    return max(phi.e, gamma.e) + poly_degree(poly_lcm(phi.alpha, gamma.alpha))
