import re

import pytest

from polycomplete import CallbackError, InvalidPrescriptionError
from polycomplete.algebra import HomogFactor, PrimeField, RationalField, make_poly, one_poly
from polycomplete.completion import (
    FeasibilityReport,
    PredicateRegistry,
    Prescription,
    Variant,
    build_ab_alt,
    build_ab_full,
    check,
    check_columns,
    check_fin_cmi,
    check_full,
    predicate_registry,
)
from polycomplete.completion.report import compare
from polycomplete.structmat import PolyMatrix, eigenstructure

# --- Fixtures ---


@pytest.fixture
def rotation_base():
    """Eigenstructure of [[s, 1], [-1, s]] over the rationals"""
    P = PolyMatrix.from_coeffs(RationalField(), 1, [[[0, 1], [1]], [[-1], [0, 1]]])
    return eigenstructure(P)


@pytest.fixture
def quadratic_base():
    """Eigenstructure of [[s^2, -1, 0], [0, 0, 0]]: r=1, c=(2, 0), u=(0)"""
    P = PolyMatrix.from_coeffs(
        RationalField(), 2, [[[0, 0, 1], [-1], []], [[], [], []]]
    )
    return eigenstructure(P)


@pytest.fixture
def registry():
    """Provides the global PredicateRegistry instance"""
    return predicate_registry


def unit_chain(field, length):
    return (one_poly(field),) * length


# --- Infinite Structure Tests ---


@pytest.mark.parametrize(
    "v, feasible, caveat, failed",
    [
        ((0,), True, False, ()),
        ((1,), True, True, ()),
        ((2,), True, True, ()),
        ((3,), False, False, ("excess-bound", "row-majorization")),
    ],
)
def test_inf_sing_on_rotation(rotation_base, v, feasible, caveat, failed):
    presc = Prescription(Variant.INF_SING, 1, 0, f=(0, 0), d=(), v=v)
    report = check(rotation_base, presc)
    assert report.feasible is feasible
    assert report.field_caveat is caveat
    assert report.failed == failed
    assert report.constants == {"infinite_excess": v[0]}


def test_inf_sing_report_details(rotation_base):
    presc = Prescription(Variant.INF_SING, 1, 0, f=(0, 0), d=(), v=(1,))
    report = check(rotation_base, presc)
    assert [c.id for c in report.condition_results] == [
        "nonzero-row-indices",
        "infinite-interlacing",
        "excess-bound",
        "row-excess",
        "column-majorization",
        "row-majorization",
    ]
    assert report.aux_sequences == {"column": (), "row": (1,)}
    assert report.condition("excess-bound").lhs == 1
    assert report.condition("excess-bound").rhs == 2
    assert "(over an algebraically closed field)" in report.format()


def test_interlacing_violation_is_described(rotation_base):
    presc = Prescription(Variant.INF_SING, 1, 0, f=(0, 1), d=(), v=(1,))
    report = check(rotation_base, presc)
    assert not report.feasible
    assert report.condition("infinite-interlacing").detail == "f_2 = 1 exceeds e_2 = 0"


# --- Finite Structure Tests ---


@pytest.mark.parametrize(
    "d, feasible, excess, failed",
    [
        ((0,), True, -4, ()),
        ((1,), False, -3, ("column-majorization",)),
        ((2,), True, -2, ()),
        ((3,), True, -1, ()),
        ((4,), True, 0, ()),
        ((5,), False, 1, ("excess-bound", "row-excess")),
        ((6,), False, 2, ("excess-bound", "row-excess")),
    ],
)
def test_fin_sing_on_quadratic(quadratic_base, d, feasible, excess, failed):
    qq = quadratic_base.field
    presc = Prescription(
        Variant.FIN_SING, 1, 1, beta=unit_chain(qq, 2), d=d, v=(0,)
    )
    report = check(quadratic_base, presc)
    assert report.feasible is feasible
    assert report.constants == {"finite_excess": excess}
    assert report.failed == failed
    assert not report.field_caveat


def test_fin_cmi_column_excess(quadratic_base):
    presc = Prescription(
        Variant.FIN_CMI, 1, 1, beta=unit_chain(quadratic_base.field, 2), d=(5,)
    )
    report = check_fin_cmi(quadratic_base, presc)
    assert report.failed == ("column-excess",)
    assert report.condition("column-excess").lhs == -3
    assert report.condition("column-excess").rhs == -2


def test_finite_interlacing_violation(quadratic_base):
    qq = quadratic_base.field
    s = make_poly(qq, [0, 1])
    presc = Prescription(Variant.FIN_CMI, 1, 1, beta=(s, s), d=(2,))
    report = check(quadratic_base, presc)
    assert report.condition("finite-interlacing").detail == "beta_1 = s does not divide alpha_1 = 1"


# --- Singular Structure Tests ---


@pytest.mark.parametrize(
    "d1, feasible",
    [
        (0, True),
        (1, False),
        (2, True),
        (3, True),
        (4, True),
        (5, False),  # column-excess
        (6, False),
    ],
)
def test_cmi_on_quadratic(quadratic_base, d1, feasible):
    report = check(quadratic_base, Prescription(Variant.CMI, 1, 1, d=(d1,)))
    assert report.feasible is feasible
    assert report.aux_sequences == {"column": (2 - d1,)}


def test_rmi_carries_caveat(rotation_base):
    report = check(rotation_base, Prescription(Variant.RMI, 1, 0, v=(1,)))
    assert report.feasible
    assert report.field_caveat
    assert report.constants == {"reduced_singular_excess": 1}


# --- Full Prescription Tests ---


def full_rotation_target(field, v):
    s_plus_2 = make_poly(field, [2, 1])
    gamma = (HomogFactor.unit(field), HomogFactor(0, s_plus_2))
    return Prescription(Variant.FULL, 1, 0, gamma=gamma, d=(), v=v)


def test_full_over_gf5_both_forms():
    gf5 = PrimeField(p=5)
    P = PolyMatrix.from_coeffs(gf5, 1, [[[0, 1], [1]], [[-1], [0, 1]]])
    base = eigenstructure(P)
    presc = full_rotation_target(gf5, (1,))
    primary = check_full(base, presc)
    alternate = check_full(base, presc, form="alternate")
    assert primary.feasible and alternate.feasible
    assert primary.condition("degree-sum").relation == "=="
    assert primary.condition("degree-sum").lhs == 2


def test_bounding_sequences_agree_across_forms():
    gf5 = PrimeField(p=5)
    P = PolyMatrix.from_coeffs(gf5, 1, [[[0, 1], [1]], [[-1], [0, 1]]])
    base = eigenstructure(P)
    presc = full_rotation_target(gf5, (1,))
    assert build_ab_full(base, presc) == ((), (1,))
    assert build_ab_alt(base, presc) == ((), (1,))


def test_full_degree_sum_mismatch():
    gf5 = PrimeField(p=5)
    P = PolyMatrix.from_coeffs(gf5, 1, [[[0, 1], [1]], [[-1], [0, 1]]])
    report = check_full(eigenstructure(P), full_rotation_target(gf5, (2,)))
    assert "degree-sum" in report.failed


def test_full_gamma_must_divide_the_base_factor(rotation_base):
    qq = rotation_base.field
    gamma = (HomogFactor.unit(qq), HomogFactor(0, make_poly(qq, [0, 1])))
    report = check_full(rotation_base, Prescription(Variant.FULL, 1, 0, gamma=gamma, d=(), v=(1,)))
    assert not report.feasible
    assert "homogeneous-interlacing" in report.failed


def test_full_gamma_must_be_a_chain():
    qq = RationalField()
    gamma = (HomogFactor(0, make_poly(qq, [0, 1])), HomogFactor.unit(qq))
    with pytest.raises(InvalidPrescriptionError, match="gamma must be a divisibility chain"):
        Prescription(Variant.FULL, 1, 0, gamma=gamma, d=(), v=(1,))


# --- Column Completion Tests ---


def test_column_completion_reads_the_transpose(quadratic_base):
    """Adding a column to a 2x3 matrix: v has m-r-x entries."""
    presc = Prescription(Variant.RMI, 1, 0, v=(0,))
    report = check_columns(quadratic_base, presc)
    assert report.variant is Variant.CMI
    assert report.feasible


# --- Prescription Validation Tests ---


@pytest.mark.parametrize(
    "kwargs, expected_match",
    [
        (
            {"variant": "Cmi", "z": 1, "x": 1, "d": (2,), "v": (0,)},
            "(missing=[], unexpected=['v'])",
        ),
        ({"variant": "Cmi", "z": 0, "x": 0, "d": ()}, "A completion adds at least one row."),
        ({"variant": "Cmi", "z": 1, "x": -1, "d": ()}, "The rank increase cannot be negative."),
        ({"variant": "Cmi", "z": 1, "x": 0, "d": (1, 2)}, "Sequence must be nonincreasing."),
        (
            {"variant": "InfCmi", "z": 1, "x": 0, "f": (1, 0), "d": ()},
            "f must be nonnegative and nondecreasing.",
        ),
    ],
)
def test_prescription_validation(kwargs, expected_match):
    with pytest.raises(InvalidPrescriptionError, match=re.escape(expected_match)):
        Prescription(**kwargs)


@pytest.mark.parametrize(
    "presc, expected_match",
    [
        (Prescription(Variant.CMI, 1, 1, d=(2, 0)), "Expected 1 entries in d for r=1, x=1, z=1."),
        (Prescription(Variant.CMI, 1, 2, d=()), "x <= min(z, n - r) = 1."),
        (
            Prescription(Variant.FIN_CMI, 1, 1, beta=unit_chain(PrimeField(p=5), 2), d=(2,)),
            "but the matrix is over QQ.",
        ),
    ],
)
def test_prescription_must_fit_the_base(quadratic_base, presc, expected_match):
    with pytest.raises(InvalidPrescriptionError, match=re.escape(expected_match)):
        check(quadratic_base, presc)


def test_predicate_rejects_other_variants(quadratic_base):
    with pytest.raises(InvalidPrescriptionError, match=re.escape("Expected a Full prescription.")):
        check_full(quadratic_base, Prescription(Variant.CMI, 1, 1, d=(2,)))


# --- Registry Tests ---


def test_override_shadows_builtin(registry, quadratic_base):
    @registry.register(Variant.CMI, name="always_infeasible")
    def always_infeasible(base, presc):
        return FeasibilityReport.from_conditions(
            Variant.CMI, [compare("never", 1, 0, "<=")]
        )

    try:
        presc = Prescription(Variant.CMI, 1, 1, d=(2,))
        report, name = registry.evaluate(quadratic_base, presc)
        assert name == "always_infeasible"
        assert report.failed == ("never",)
    finally:
        registry.unregister(Variant.CMI)

    assert check(quadratic_base, presc).feasible


@pytest.mark.parametrize(
    "predicate_name, callback_func, expected_match",
    [
        (
            "boolean_predicate",
            lambda base, presc: True,  # Returns a bool, not a report
            "Make sure your predicate returns a FeasibilityReport.",
        ),
        (
            "failing_predicate",
            lambda base, presc: (_ for _ in ()).throw(
                ValueError("Intentional failure in custom predicate.")
            ),
            "Predicate 'failing_predicate' for variant 'Cmi' raised an exception.\n"
            "Details: Intentional failure in custom predicate.",
        ),
    ],
)
def test_override_validation_scenarios(
    registry, quadratic_base, predicate_name, callback_func, expected_match
):
    @registry.register("Cmi", name=predicate_name)
    def _temp_predicate(base, presc):
        return callback_func(base, presc)

    try:
        with pytest.raises(CallbackError, match=re.escape(expected_match)):
            check(quadratic_base, Prescription(Variant.CMI, 1, 1, d=(2,)))
    finally:
        registry.unregister("Cmi")


def test_override_needs_two_parameters(registry):
    with pytest.raises(TypeError, match="Expected exactly two required parameters"):
        registry.register(Variant.CMI, name="one_argument")(lambda base: None)
    assert registry.resolve(Variant.CMI)[0] == "check_cmi"


def test_override_lambda_needs_a_name(registry):
    with pytest.raises(ValueError, match="needs an explicit name"):
        registry.register(Variant.CMI)(lambda base, presc: None)


def test_unregister_restores_builtin(registry, quadratic_base):
    registry.register(Variant.CMI, Variant.RMI, name="shadow")(lambda base, presc: None)
    registry.unregister(Variant.CMI, Variant.RMI)
    presc = Prescription(Variant.CMI, 1, 1, d=(2,))
    assert registry.evaluate(quadratic_base, presc)[1] == "check_cmi"


def test_separate_registries_do_not_share_predicates(registry):
    local = PredicateRegistry()
    local.register(Variant.SING, name="local_only")(lambda base, presc: None)
    assert local.resolve(Variant.SING)[0] == "local_only"
    assert registry.resolve(Variant.SING)[0] == "check_sing"
