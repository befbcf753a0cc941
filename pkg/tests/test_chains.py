import re

import pytest

from polycomplete import FieldObstructionError, InvalidInputError, NotFeasibleError
from polycomplete.algebra import (
    HomogFactor,
    PrimeField,
    RationalField,
    format_poly,
    make_poly,
    one_poly,
)
from polycomplete.completion import (
    Prescription,
    Variant,
    assemble_full,
    check_full,
    construct_beta_chain,
    construct_f_chain,
    construct_gamma_chain,
    homogeneous_divisor_of_degree,
    insertion_plan,
    witness_to_full,
)
from polycomplete.completion.chains import pair_chains
from polycomplete.structmat import PolyMatrix, eigenstructure

# --- Fixtures ---


def rotation_base(field):
    P = PolyMatrix.from_coeffs(field, 1, [[[0, 1], [1]], [[-1], [0, 1]]])
    return eigenstructure(P)


@pytest.fixture
def quadratic_base():
    """Eigenstructure of [[s^2, -1, 0], [0, 0, 0]]: r=1, c=(2, 0), u=(0)"""
    P = PolyMatrix.from_coeffs(
        RationalField(), 2, [[[0, 0, 1], [-1], []], [[], [], []]]
    )
    return eigenstructure(P)


def inf_sing(v):
    return Prescription(Variant.INF_SING, 1, 0, f=(0, 0), d=(), v=v)


# --- Insertion Plan Tests ---


@pytest.mark.parametrize(
    "degrees, excess, expected",
    [
        ([0, 2], 1, (1, 2, 1)),
        ([0, 2], 2, (1, 2, 0)),
        ([1, 1, 3], 4, (2, 2, 0)),
        ([0, 0, 3], 2, (1, 3, 1)),
    ],
)
def test_insertion_plan(degrees, excess, expected):
    assert insertion_plan(degrees, excess) == expected


@pytest.mark.parametrize("excess", [0, 4])
def test_insertion_plan_rejects_uncoverable_excess(excess):
    with pytest.raises(NotFeasibleError, match="cannot be absorbed"):
        insertion_plan([0, 2], excess)


# --- Beta Chain Tests ---


def test_beta_chain_over_gf5():
    gf5 = PrimeField(p=5)
    built = construct_beta_chain(rotation_base(gf5), inf_sing((1,)))
    assert built.branch == "positive"
    assert (built.g, built.h, built.w) == (1, 2, 1)
    assert [format_poly(b) for b in built.chain] == ["1", "s+2"]
    assert format_poly(built.tau) == "s+2"
    assert built.to_json()["chain"] == [[1], [2, 1]]


def test_beta_chain_obstructed_over_gf3():
    with pytest.raises(FieldObstructionError, match=re.escape("over GF(3)")):
        construct_beta_chain(rotation_base(PrimeField(p=3)), inf_sing((1,)))


def test_beta_chain_nonpositive_branch():
    built = construct_beta_chain(rotation_base(RationalField()), inf_sing((0,)))
    assert built.branch == "nonpositive"
    assert [format_poly(b) for b in built.chain] == ["1", "s^2+1"]
    assert format_poly(built.tau) == "1"


def test_beta_chain_of_infeasible_prescription():
    with pytest.raises(NotFeasibleError, match=re.escape("excess-bound, row-majorization failed")):
        construct_beta_chain(rotation_base(RationalField()), inf_sing((3,)))


# --- f Chain Tests ---


def test_f_chain_nonpositive_branch(quadratic_base):
    qq = quadratic_base.field
    presc = Prescription(
        Variant.FIN_SING, 1, 1, beta=(one_poly(qq), one_poly(qq)), d=(3,), v=(0,)
    )
    built = construct_f_chain(quadratic_base, presc)
    assert built.kind == "f"
    assert built.branch == "nonpositive"
    assert built.chain == (0, 1)
    assert built.tau == 1
    assert built.format() == "f-chain (nonpositive branch): (0, 1)"


# --- Gamma Chain Tests ---


def test_gamma_chain_inserts_a_unit_factor():
    gf3 = PrimeField(p=3)
    presc = Prescription(Variant.SING, 1, 0, d=(), v=(2,))
    built = construct_gamma_chain(rotation_base(gf3), presc)
    assert (built.g, built.h, built.w) == (1, 2, 0)
    assert built.chain == (HomogFactor.unit(gf3), HomogFactor.unit(gf3))


def test_gamma_chain_obstructed_over_gf3():
    presc = Prescription(Variant.SING, 1, 0, d=(), v=(1,))
    with pytest.raises(FieldObstructionError):
        construct_gamma_chain(rotation_base(PrimeField(p=3)), presc)


def test_homogeneous_divisor_prefers_the_largest_power_of_t():
    qq = RationalField()
    s = make_poly(qq, [0, 1])
    lo = HomogFactor(0, one_poly(qq))
    hi = HomogFactor(2, s)
    assert homogeneous_divisor_of_degree(lo, hi, 2) == HomogFactor(2, one_poly(qq))
    assert homogeneous_divisor_of_degree(lo, hi, 3) == HomogFactor(2, s)


def test_pair_chains_length_mismatch():
    qq = RationalField()
    with pytest.raises(InvalidInputError, match="Cannot pair 1 multiplicities with 2"):
        pair_chains((0,), (one_poly(qq), one_poly(qq)))


# --- Assembly Tests ---


def test_assemble_full_from_inf_sing_over_gf5():
    gf5 = PrimeField(p=5)
    base = rotation_base(gf5)
    assembly = assemble_full(base, inf_sing((1,)))
    assert assembly.full.variant is Variant.FULL
    assert assembly.full.gamma == (
        HomogFactor.unit(gf5),
        HomogFactor(0, make_poly(gf5, [2, 1])),
    )
    assert [stage.variant for stage in assembly.stages] == [Variant.INF_SING, Variant.FULL]
    assert check_full(base, assembly.full).feasible


def test_assemble_full_reduces_cmi(quadratic_base):
    assembly = assemble_full(quadratic_base, Prescription(Variant.CMI, 1, 1, d=(2,)))
    assert [stage.variant for stage in assembly.stages] == [
        Variant.CMI,
        Variant.INF_CMI,
        Variant.INF_SING,
        Variant.FULL,
    ]
    assert assembly.stages[1].f == (0, 0)
    assert [chain.kind for chain in assembly.chains] == ["beta"]


@pytest.mark.parametrize(
    "presc",
    [
        Prescription(Variant.CMI, 1, 1, d=(3,)),
        Prescription(Variant.CMI, 1, 0, d=(2, 0)),
        Prescription(Variant.RMI, 1, 0, v=(0, 0)),
        Prescription(Variant.RMI, 1, 1, v=(0,)),
    ],
)
def test_witness_to_full_is_feasible(quadratic_base, presc):
    assert witness_to_full(quadratic_base, presc).feasible


def test_assemble_full_rejects_infeasible(quadratic_base):
    with pytest.raises(NotFeasibleError, match="No Cmi completion exists"):
        assemble_full(quadratic_base, Prescription(Variant.CMI, 1, 1, d=(1,)))
