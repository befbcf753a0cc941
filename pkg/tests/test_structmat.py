import re

import pytest

from polycomplete import (
    DimensionMismatchError,
    GradeExceededError,
    InvalidInputError,
)
from polycomplete.algebra import PrimeField, RationalField, format_poly, make_poly
from polycomplete.structmat import (
    Eigenstructure,
    PolyMatrix,
    eigenstructure,
    invariant_factors_from_divisors,
    rank,
    smith_form,
    stack,
)

# --- Fixtures ---


@pytest.fixture
def rotation():
    """The grade-1 pencil [[s, 1], [-1, s]] over the rationals"""
    return PolyMatrix.from_coeffs(RationalField(), 1, [[[0, 1], [1]], [[-1], [0, 1]]])


@pytest.fixture
def quadratic():
    """The grade-2 matrix [[s^2, -1, 0], [0, 0, 0]] over the rationals"""
    return PolyMatrix.from_coeffs(
        RationalField(), 2, [[[0, 0, 1], [-1], []], [[], [], []]]
    )


def alphas_of(eig: Eigenstructure) -> list[str]:
    return [format_poly(a) for a in eig.alphas]


# --- Extraction Tests ---


def test_rotation_eigenstructure(rotation):
    eig = eigenstructure(rotation)
    assert eig.r == 2
    assert alphas_of(eig) == ["1", "s^2+1"]
    assert eig.es == (0, 0)
    assert eig.cmi == ()
    assert eig.rmi == ()
    assert eig.index_sum() == (2, 2)


def test_quadratic_eigenstructure(quadratic):
    eig = eigenstructure(quadratic)
    assert eig.r == 1
    assert alphas_of(eig) == ["1"]
    assert eig.es == (0,)
    assert eig.cmi == (2, 0)
    assert eig.rmi == (0,)
    assert (eig.n, eig.m, eig.eta) == (3, 2, 0)


def test_zero_matrix_has_only_zero_minimal_indices():
    Z = PolyMatrix.zeros(PrimeField(p=3), 1, 2, 3)
    eig = eigenstructure(Z)
    assert rank(Z) == 0
    assert eig.alphas == ()
    assert eig.cmi == (0, 0, 0)
    assert eig.rmi == (0, 0)


def test_infinite_eigenvalue_from_a_degree_drop():
    """[[1, s]] read with grade 2 has a degree deficiency at infinity."""
    P = PolyMatrix.from_coeffs(RationalField(), 2, [[[1], [0, 1]]])
    eig = eigenstructure(P)
    assert eig.es == (1,)
    assert eig.cmi == (1,)
    assert eig.index_sum() == (2, 2)


def test_completion_over_gf5_gains_a_linear_factor():
    gf5 = PrimeField(p=5)
    P = PolyMatrix.from_coeffs(gf5, 1, [[[0, 1], [1]], [[-1], [0, 1]]])
    W = PolyMatrix.from_coeffs(gf5, 1, [[[2], [1]]])
    eig = eigenstructure(stack(P, W))
    assert alphas_of(eig) == ["1", "s+3"]
    assert eig.es == (0, 0)
    assert eig.rmi == (1,)


@pytest.mark.parametrize(
    "row, alphas, rmi",
    [
        ([[], []], ["1", "s^2+1"], (0,)),
        ([[1], []], ["1", "1"], (2,)),
    ],
)
def test_rotation_completions(rotation, row, alphas, rmi):
    """The zero row keeps s^2+1; the row [1, 0] cancels it into a row minimal index."""
    W = PolyMatrix.from_coeffs(RationalField(), 1, [row])
    eig = eigenstructure(stack(rotation, W))
    assert alphas_of(eig) == alphas
    assert eig.es == (0, 0)
    assert eig.rmi == rmi


@pytest.mark.parametrize("name", ["rotation", "quadratic"])
def test_smith_form_matches_determinantal_divisors(request, name):
    P = request.getfixturevalue(name)
    assert smith_form(P) == invariant_factors_from_divisors(P)


def test_transpose_swaps_minimal_indices(quadratic):
    eig = eigenstructure(quadratic)
    transposed = eigenstructure(quadratic.transpose())
    assert transposed == eig.transpose()
    assert transposed.cmi == (0,)
    assert transposed.rmi == (2, 0)


# --- Abstract Eigenstructure Tests ---


def test_abstract_eigenstructure_must_satisfy_index_sum():
    qq = RationalField()
    with pytest.raises(InvalidInputError, match=re.escape("break the Index Sum identity: 3 != 2")):
        Eigenstructure(qq, 1, (make_poly(qq, [1]), make_poly(qq, [1, 0, 1])), (0, 1), (), ())


@pytest.mark.parametrize(
    "alphas, es, cmi, expected_match",
    [
        ([[0, 1], [1]], (0, 0), (), "must form a divisibility chain"),
        ([[1]], (0,), (0, 1), "cmi must be a partition"),
        ([[1], [1]], (1, 0), (), "nonnegative and nondecreasing"),
        ([[0, 2]], (0,), (), "must be a nonzero monic polynomial"),
    ],
)
def test_abstract_eigenstructure_validation(alphas, es, cmi, expected_match):
    qq = RationalField()
    with pytest.raises(InvalidInputError, match=re.escape(expected_match)):
        Eigenstructure(qq, 3, tuple(make_poly(qq, a) for a in alphas), es, cmi, ())


# --- Matrix Construction Tests ---


def test_entries_cannot_exceed_the_grade():
    with pytest.raises(GradeExceededError, match=re.escape("exceeds grade 1")):
        PolyMatrix.from_coeffs(RationalField(), 1, [[[0, 0, 1]]])


def test_ragged_rows_are_rejected():
    with pytest.raises(DimensionMismatchError, match="Row 1 has 1 entries, expected 2."):
        PolyMatrix.from_coeffs(RationalField(), 1, [[[1], [1]], [[1]]])


@pytest.mark.parametrize(
    "W_field, W_grade, W_rows, exc, expected_match",
    [
        (RationalField(), 1, [[[1]]], DimensionMismatchError, "Cannot stack a 1x1 block"),
        (PrimeField(p=3), 1, [[[1], [1]]], DimensionMismatchError, "Cannot stack matrices over GF(3)"),
        (RationalField(), 2, [[[1], [1]]], GradeExceededError, "grade 2, above the grade 1"),
    ],
)
def test_stack_errors(rotation, W_field, W_grade, W_rows, exc, expected_match):
    W = PolyMatrix.from_coeffs(W_field, W_grade, W_rows)
    with pytest.raises(exc, match=re.escape(expected_match)):
        stack(rotation, W)


def test_matrix_json_shape(quadratic):
    data = quadratic.to_json()
    assert data["field"] == {"type": "rational"}
    assert (data["rows"], data["cols"], data["grade"]) == (2, 3, 2)
    assert data["entries"][0][0] == ["0/1", "0/1", "1/1"]
    assert data["entries"][1][2] == []
