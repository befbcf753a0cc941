from .factor import divisor_of_degree, irreducible_factors
from .field import S, FieldSpec, PrimeField, RationalField, field_of, parse_field
from .homog import HomogFactor, hlcm_deg
from .poly import (
    NEG_INF,
    ascending_coeffs,
    divides,
    format_poly,
    make_poly,
    one_poly,
    poly_degree,
    poly_gcd,
    poly_lcm,
    poly_to_json,
    poly_valuation,
    s_power,
    zero_poly,
)
