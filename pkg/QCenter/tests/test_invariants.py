##
## affine and center-affine invariants
##

from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import ONE_POINT, ROTATION, rationals, shifts, system, systems, unimodular
from families import canonical_system
from forms import BinaryForm, transvectant
from invariants import (AffineInvariants, C_NAMES, CALIBRATIONS, PRINTED_C, a_invariants, c_invariants,
                        c_polynomials, calibration_report, identity_checks, invariant_table, origin_invariants)


def test_zero_quadratic_part_has_zero_a():
    assert a_invariants(system((1, 2, 3, 0, 0, 0), (4, 5, 6, 0, 0, 0))) == (0,) * 26


def test_c_of_zero_vector():
    assert all(v == 0 for v in c_invariants([0] * 26).values())
    with pytest.raises(ValueError):
        c_invariants([0] * 25)


def test_c_from_a_matches_lazy_values():
    inv = AffineInvariants(canonical_system("triple-origin", h=1, m=2, n=-1, f=Fraction(1, 2)))
    assert c_invariants(inv.a_values()) == inv.c_values()


def test_origin_invariants_rotation():
    values = origin_invariants(ROTATION)
    assert values["I1"] == 0 and values["I2"] == -2
    for name in ("I3", "I4", "I5", "I6", "I13"):
        assert values[name] == 0


def test_origin_invariants_one_point():
    values = origin_invariants(ONE_POINT)
    assert AffineInvariants(ONE_POINT).J1 == 1
    assert values["J2"] == 0 and values["I1"] == 0 and values["I2"] == -2
    assert values["K1"] == BinaryForm.x1()


@settings(deadline=None, max_examples=30)
@given(rationals, rationals, rationals, rationals, rationals, rationals)
def test_linear_system_origin_invariants(a, b, c, d, e, f):
    values = origin_invariants(system((a, b, c, 0, 0, 0), (d, e, f, 0, 0, 0)))
    for name in ("I3", "I4", "I5", "I6", "I13", "I17", "I20"):
        assert values[name] == 0


@settings(deadline=None, max_examples=50)
@given(systems)
def test_trace_invariants(sys):
    values = origin_invariants(sys)
    assert values["I1"] == sys.p10 + sys.q01
    assert values["I2"] == sys.p10 ** 2 + 2 * sys.p01 * sys.q10 + sys.q01 ** 2


@settings(deadline=None, max_examples=30)
@given(systems)
def test_c3_two_ways(sys):
    inv = AffineInvariants(sys)
    assert inv.C(3) == inv.A(2) == transvectant(inv.Chat, inv.Dhat, 3).scalar()


@settings(deadline=None, max_examples=30)
@given(systems)
def test_identity_checks_hold(sys):
    checks = identity_checks(sys)
    assert all(checks.values()), [name for name, ok in checks.items() if not ok]


def test_identity_checks_with_vanishing_mu():
    checks = identity_checks(canonical_system("linear-first-cube", c=1, e=2, f=3, n=1))
    assert "mu = 0 => R == 12 H^2" in checks
    assert all(checks.values())


@settings(deadline=None, max_examples=25)
@given(systems, unimodular(), shifts)
def test_unimodular_affine_invariance(sys, q, h):
    before = AffineInvariants(sys)
    after = AffineInvariants(sys.transform(q, h))
    assert before.a_values() == after.a_values()
    for name in C_NAMES:
        assert before.C(name) == after.C(name), name


def test_invariant_table():
    table = invariant_table(canonical_system("reversible-rotation", c=2, d=1))
    assert len(table.A) == 26
    assert set(table.C) == set(C_NAMES)
    assert table.E1 == table.A[4] and table.E2 == table.A[24]
    assert table.K1.degree == 1
    assert table.comitants["mu"] == 4 * 2 * 1 * (2 - 1) ** 2
    assert "J2" not in table.I


def test_invariants_are_lazy():
    inv = AffineInvariants(canonical_system("rotation", a=1, b=2, c=3))
    inv.C(1)
    inv.C("C3")
    assert list(inv.evaluated_c()) == ["C1", "C3"]


@settings(deadline=None, max_examples=30)
@given(rationals, rationals, rationals, rationals, rationals, rationals, rationals, rationals, rationals)
def test_c1_vanishes_at_zero_trace_origin(p10, p01, p20, p11, p02, q10, q20, q11, q02):
    sys = system((0, p10, p01, p20, p11, p02), (0, q10, -p10, q20, q11, q02))
    assert AffineInvariants(sys).C(1) == 0


@settings(deadline=None, max_examples=30)
@given(rationals, rationals, rationals, rationals, rationals, rationals, rationals)
def test_divergence_free_systems_pass_lemma1(p10, p01, p20, p11, p02, q10, q20):
    sys = system((0, p10, p01, p20, p11, p02), (0, q10, -p10, q20, -2 * p20, -p11 / 2))
    inv = AffineInvariants(sys)
    assert inv.C(1) == 0 and inv.C(3) == 0


def test_c1_weights():
    c1 = c_polynomials()["C1"]
    assert c1.source == "fitted on origin-traceless"
    assert c1.weights() == (9, -36, -16, 0, -12, -72)
    assert [indices for _, indices in c1.terms] == [indices for _, indices in PRINTED_C["C1"]]


@pytest.mark.parametrize("name", ["C1", "C8", "C12"])
def test_calibration_resolves(name):
    assert c_polynomials()[name].resolved


def test_calibration_report():
    report = calibration_report()
    assert [name for name, _, _ in report] == list(CALIBRATIONS)
    polynomials = c_polynomials()
    for name in set(C_NAMES) - set(CALIBRATIONS):
        assert polynomials[name].source == "printed"
        assert polynomials[name].terms == PRINTED_C[name]


def test_lemma1_on_reversible_rotation():
    # the center at the origin of ẋ = y − 2xy, ẏ = −x + x² + 2y²
    inv = AffineInvariants(canonical_system("reversible-rotation", c=2, d=1))
    assert inv.C(1) == 0 and inv.C(3) == 0
