"""
Univariate polynomial helpers on top of sympy ``Poly``.

Every polynomial lives in the shared indeterminate ``s`` over the domain of a
:mod:`polycomplete.algebra.field` model. The zero polynomial has degree
``NEG_INF``, a sentinel that orders below every integer and raises as soon as
it is used in arithmetic.

Examples:
    >>> from polycomplete.algebra.field import PrimeField
    >>> gf5 = PrimeField(p=5)
    >>> p = make_poly(gf5, [1, 0, 1])
    >>> format_poly(p)
    's^2+1'
    >>> format_poly(poly_gcd(p, make_poly(gf5, [2, 1])))
    's+2'
    >>> poly_degree(zero_poly(gf5)) < 0
    True
"""

from collections.abc import Sequence
from functools import total_ordering
from typing import Any

from sympy import Poly

from polycomplete.algebra.field import S, field_of
from polycomplete.exceptions import SentinelArithmeticError, ZeroPolynomialError


@total_ordering
class _NegativeInfinity:
    """Degree of the zero polynomial."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "NEG_INF"

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        return other is not self

    def __hash__(self) -> int:
        return hash("NEG_INF")

    def _trap(self, *_: Any):
        raise SentinelArithmeticError(
            "The degree of the zero polynomial entered an arithmetic expression."
        )

    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = _trap
    __neg__ = __int__ = __index__ = _trap


NEG_INF = _NegativeInfinity()


def make_poly(field, coeffs: Sequence[Any]) -> Poly:
    """Build a polynomial from ascending coefficients given as raw scalars."""
    domain = field.domain
    rep = [field.scalar(c) for c in reversed(list(coeffs))]
    if not rep:
        return Poly(0, S, domain=domain)
    return Poly.from_list(rep, S, domain=domain)


def zero_poly(field) -> Poly:
    return Poly(0, S, domain=field.domain)


def one_poly(field) -> Poly:
    return Poly(1, S, domain=field.domain)


def s_power(field, k: int) -> Poly:
    """The monomial s^k."""
    domain = field.domain
    return Poly.from_list([domain.one] + [domain.zero] * k, S, domain=domain)


def ascending_coeffs(p: Poly) -> list:
    """Coefficients of ``p`` as domain elements, lowest degree first."""
    return list(reversed(p.rep.to_list()))


def poly_degree(p: Poly) -> int | _NegativeInfinity:
    return NEG_INF if p.is_zero else p.degree()


def poly_valuation(p: Poly) -> int:
    """Multiplicity of s as a factor of a nonzero polynomial."""
    coeffs = ascending_coeffs(p)
    return next(i for i, c in enumerate(coeffs) if c)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor; ``gcd(p, 0) = monic(p)``.

    Raises:
        ZeroPolynomialError: If both inputs are zero.
    """
    if p.is_zero and q.is_zero:
        raise ZeroPolynomialError("gcd of two zero polynomials is undefined.")
    return p.gcd(q).monic()


def poly_lcm(p: Poly, q: Poly) -> Poly:
    """Monic least common multiple.

    Raises:
        ZeroPolynomialError: If either input is zero.
    """
    if p.is_zero or q.is_zero:
        raise ZeroPolynomialError("lcm requires two nonzero polynomials.")
    return p.lcm(q).monic()


def divides(a: Poly, b: Poly) -> bool:
    """Whether ``a`` divides ``b``. Everything divides the zero polynomial."""
    if b.is_zero:
        return True
    if a.is_zero:
        return False
    return b.rem(a).is_zero


def coeff_key(p: Poly) -> tuple:
    """Sort key ordering polynomials by degree, then by ascending coefficients."""
    field = field_of(p.domain)
    return (poly_degree(p), tuple(_comparable(field, c) for c in ascending_coeffs(p)))


def _comparable(field, c):
    if field.is_finite:
        return field.dump_scalar(c)
    return (int(c.numerator), int(c.denominator))


def poly_to_json(p: Poly) -> list:
    """Ascending coefficient array, the JSON form of a polynomial."""
    field = field_of(p.domain)
    return [field.dump_scalar(c) for c in ascending_coeffs(p)]


def format_poly(p: Poly, var: str = "s") -> str:
    """Descending human-readable form, e.g. ``s^2+1``.

    Examples:
        >>> from polycomplete.algebra.field import RationalField
        >>> qq = RationalField()
        >>> format_poly(make_poly(qq, ["-1/2", 0, 1]))
        's^2-1/2'
        >>> format_poly(make_poly(qq, []))
        '0'
    """
    if p.is_zero:
        return "0"
    field = field_of(p.domain)
    terms = [
        (k, c) for k, c in reversed(list(enumerate(ascending_coeffs(p)))) if c
    ]
    return _join_terms(field, [(c, power_str(var, k)) for k, c in terms])


def power_str(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def _join_terms(field, terms: list[tuple[Any, str]]) -> str:
    out = ""
    for c, mono in terms:
        text = field.show_scalar(c)
        negative = text.startswith("-")
        text = text.lstrip("-")
        if mono and text == "1":
            text = mono
        elif mono:
            text = f"{text}{mono}"
        if not out:
            out = f"-{text}" if negative else text
        else:
            out += f"-{text}" if negative else f"+{text}"
    return out
