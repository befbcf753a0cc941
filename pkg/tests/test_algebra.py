import re

import pytest

from polycomplete import FieldObstructionError, InvalidInputError, ZeroPolynomialError
from polycomplete.algebra import (
    NEG_INF,
    HomogFactor,
    PrimeField,
    RationalField,
    divides,
    divisor_of_degree,
    format_poly,
    hlcm_deg,
    irreducible_factors,
    make_poly,
    one_poly,
    parse_field,
    poly_degree,
    poly_gcd,
    poly_lcm,
    zero_poly,
)

# --- Fixtures ---


@pytest.fixture
def qq():
    """Provides the rational field"""
    return RationalField()


@pytest.fixture
def gf5():
    """Provides GF(5), where s^2+1 splits"""
    return PrimeField(p=5)


# --- Polynomial Tests ---


@pytest.mark.parametrize(
    "coeffs, expected",
    [
        ([1, -2, 3], "3s^2-2s+1"),
        (["1/2", 0, 0, 1], "s^3+1/2"),
        ([0, -1], "-s"),
        ([5], "5"),
    ],
)
def test_format_poly_rational(qq, coeffs, expected):
    assert format_poly(make_poly(qq, coeffs)) == expected


def test_prime_field_normalizes_residues(gf5):
    """Negative and oversized residues are reduced into [0, p)."""
    assert format_poly(make_poly(gf5, [-1, 1])) == "s+4"
    assert format_poly(make_poly(gf5, [7, 0, 6])) == "s^2+2"


def test_gcd_lcm_and_divides(qq):
    s_sq_plus_s = make_poly(qq, [0, 1, 1])
    s_sq = make_poly(qq, [0, 0, 1])
    s = make_poly(qq, [0, 1])
    s_plus_1 = make_poly(qq, [1, 1])

    assert format_poly(poly_gcd(s_sq_plus_s, s_sq)) == "s"
    assert format_poly(poly_lcm(s, s_plus_1)) == "s^2+s"
    assert format_poly(poly_gcd(make_poly(qq, [0, 3]), zero_poly(qq))) == "s"
    assert divides(s, s_sq)
    assert not divides(s_plus_1, s_sq)
    # everything divides zero, zero divides nothing else
    assert divides(zero_poly(qq), zero_poly(qq))
    assert not divides(zero_poly(qq), s)


def test_zero_polynomial_errors(qq):
    with pytest.raises(ZeroPolynomialError, match="gcd of two zero polynomials"):
        poly_gcd(zero_poly(qq), zero_poly(qq))
    with pytest.raises(ZeroPolynomialError, match="lcm requires two nonzero"):
        poly_lcm(one_poly(qq), zero_poly(qq))


def test_degree_of_zero_is_a_sentinel(qq):
    assert poly_degree(zero_poly(qq)) is NEG_INF
    assert NEG_INF < 0
    assert poly_degree(one_poly(qq)) == 0


# --- Homogeneous Factor Tests ---


def test_homogeneous_factor_rendering(gf5):
    factor = HomogFactor(1, make_poly(gf5, [2, 1]))
    assert factor.degree == 2
    assert factor.format() == "st+2t^2"
    assert str(HomogFactor.unit(gf5)) == "1"


def test_homogeneous_divisibility_is_componentwise(qq):
    s = make_poly(qq, [0, 1])
    assert HomogFactor(0, s).divides(HomogFactor(1, s * s))
    assert not HomogFactor(2, one_poly(qq)).divides(HomogFactor(1, s))
    # None stands for the zero factor
    assert HomogFactor(3, s).divides(None)
    assert hlcm_deg(HomogFactor(1, s), HomogFactor(0, make_poly(qq, [1, 1]))) == 3


@pytest.mark.parametrize(
    "e, coeffs, expected_match",
    [
        (-1, [1], "Power of t must be nonnegative."),
        (0, [0, 2], "Finite part of a homogeneous factor must be a nonzero monic"),
        (0, [], "Finite part of a homogeneous factor must be a nonzero monic"),
    ],
)
def test_homogeneous_factor_validation(qq, e, coeffs, expected_match):
    with pytest.raises(InvalidInputError, match=re.escape(expected_match)):
        HomogFactor(e, make_poly(qq, coeffs))


# --- Divisor Search Tests ---


def test_irreducible_factors_over_gf5(gf5):
    factors = irreducible_factors(make_poly(gf5, [1, 0, 1]))
    assert [format_poly(f) for f in factors] == ["s+2", "s+3"]


@pytest.mark.parametrize(
    "w, expected",
    [
        (0, "1"),
        (1, "s"),  # smallest factor first
        (2, "s^2+s"),
        (3, "s^3+3s^2+2s"),
    ],
)
def test_divisor_of_degree_picks_smallest_subset(qq, w, expected):
    hi = make_poly(qq, [0, 2, 3, 1])  # s(s+1)(s+2)
    assert format_poly(divisor_of_degree(one_poly(qq), hi, w)) == expected


def test_divisor_of_degree_field_obstruction(qq):
    """s^2+1 has no linear factor over the rationals or over GF(3)."""
    with pytest.raises(FieldObstructionError, match=re.escape("exists over QQ")):
        divisor_of_degree(one_poly(qq), make_poly(qq, [1, 0, 1]), 1)

    gf3 = PrimeField(p=3)
    with pytest.raises(FieldObstructionError, match=re.escape("exists over GF(3)")):
        divisor_of_degree(one_poly(gf3), make_poly(gf3, [1, 0, 1]), 1)


def test_divisor_of_degree_input_errors(qq):
    s = make_poly(qq, [0, 1])
    with pytest.raises(InvalidInputError, match=re.escape("Required degree 4 is outside [0, 1].")):
        divisor_of_degree(one_poly(qq), s, 4)
    with pytest.raises(InvalidInputError, match=re.escape("Expected nonzero lo | hi.")):
        divisor_of_degree(make_poly(qq, [1, 1]), s, 1)


# --- Field Tests ---


@pytest.mark.parametrize(
    "text, expected",
    [
        ("rational", RationalField()),
        ("QQ", RationalField()),
        ("5", PrimeField(p=5)),
        ("GF(7)", PrimeField(p=7)),
    ],
)
def test_parse_field(text, expected):
    assert parse_field(text) == expected


@pytest.mark.parametrize(
    "text, expected_match",
    [
        ("4", "p must be a prime number."),
        ("banana", "Unknown field 'banana'."),
    ],
)
def test_parse_field_errors(text, expected_match):
    with pytest.raises(InvalidInputError, match=re.escape(expected_match)):
        parse_field(text)


@pytest.mark.parametrize("raw", ["x/2", "1/0", True, 1.5])
def test_rational_scalar_rejects_malformed_input(qq, raw):
    with pytest.raises(InvalidInputError):
        qq.scalar(raw)


def test_rational_scalars_round_trip_as_strings(qq):
    c = qq.scalar("-3/4")
    assert qq.dump_scalar(c) == "-3/4"
    assert qq.show_scalar(qq.scalar(2)) == "2"
