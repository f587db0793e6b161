##
## system families and closed-form regressions
##

from fractions import Fraction

import numpy as np
import pytest

from conftest import TWO_CENTERS, system
from config import QCenterConfig
from families import (CANONICAL_NAMES, REGRESSIONS, canonical_system, family_corpus, generate_family,
                      hamiltonian_from_coefficients, run_regressions, sample_parameters, system_through_points,
                      usable)
from invariants import AffineInvariants


def test_hamiltonian_from_coefficients():
    third = Fraction(1, 3)
    h = (0, 0, Fraction(1, 2), 0, Fraction(1, 2), -third, 0, 0, -third)
    assert hamiltonian_from_coefficients(h) == TWO_CENTERS


def test_canonical_system():
    assert canonical_system("reversible-rotation", c=2, d=1) == system((0, 0, 1, 0, -2, 0), (0, -1, 0, 1, 0, 2))
    with pytest.raises(ValueError):
        canonical_system("7", c=1)
    with pytest.raises(ValueError):
        canonical_system("reversible-rotation", c=1)


def test_every_canonical_system_builds():
    rng = np.random.default_rng(0)
    for name in CANONICAL_NAMES:
        sys = canonical_system(name, **sample_parameters(name, rng))
        assert sys.p00 == 0 and sys.q00 == 0


def test_points_of_shape_five():
    p = system_through_points([(0, 0), (1, 0), (0, 1)], np.random.default_rng(2))
    for c00, c10, c01, c20, c11, c02 in (p.p_coefficients(), p.q_coefficients()):
        assert c00 == 0 and c20 == -c10 and c02 == -c01


def test_family_corpus_is_reproducible():
    first = family_corpus("placed-points", 4, seed=9)
    second = family_corpus("placed-points", 4, seed=9)
    assert first == second
    assert [record_id for record_id, _ in first] == [f"placed-points-9-{i}" for i in range(4)]


@pytest.mark.parametrize("kind", [f for f in QCenterConfig.FAMILIES if f != "random"])
def test_generated_systems_are_usable(kind):
    rng = np.random.default_rng(4)
    for _ in range(5):
        assert usable(generate_family(kind, rng=rng))


def test_hamiltonian_family_has_zero_divergence():
    rng = np.random.default_rng(6)
    for _ in range(10):
        sys = generate_family("hamiltonian", rng=rng)
        assert sys.p10 + sys.q01 == 0
        assert 2 * sys.p20 + sys.q11 == 0 and sys.p11 + 2 * sys.q02 == 0


def test_reversible_family_symmetry():
    rng = np.random.default_rng(8)
    for _ in range(10):
        p00, p10, p01, p20, p11, p02, q00, q10, q01, q20, q11, q02 = generate_family("reversible", rng=rng).coefficients()
        odd_in_x = p10 == p11 == q00 == q01 == q20 == q02 == 0
        odd_in_y = p00 == p10 == p20 == p02 == q01 == q11 == 0
        assert odd_in_x or odd_in_y


def test_unknown_family():
    with pytest.raises(ValueError):
        generate_family("cubic", seed=0)


def test_reversible_rotation_values():
    inv = AffineInvariants(canonical_system("reversible-rotation", c=2, d=1))
    # D < 0 here, so C12 is positive
    assert inv.mu == 8
    assert inv.D == Fraction(-16, 27)
    assert inv.C(1) == 0 and inv.C(3) == 0
    assert inv.C(8) == Fraction(-4, 3)
    assert inv.C(12) == 32


def test_triple_origin_values():
    # C4 = (2/3) m h (h + n)², C9 = h [(h + n)² + m² n] at f = 0
    inv = AffineInvariants(canonical_system("triple-origin", h=2, m=1, n=1, f=0))
    assert inv.mu == 4 * 4 * (0 + 0 - 1)
    assert inv.C(4) == Fraction(2, 3) * 1 * 2 * 9
    assert inv.C(9) == 2 * (9 + 1)


@pytest.mark.parametrize("name", list(REGRESSIONS))
def test_closed_forms(name):
    results = run_regressions(seed=QCenterConfig.DEFAULT_SEED, samples=5, names=[name])
    failed = [(r.identity, r.detail) for r in results if not r.passed]
    assert not failed
    assert all(r.samples > 0 for r in results)


@pytest.mark.slow
def test_closed_forms_acceptance_run():
    results = run_regressions(seed=QCenterConfig.DEFAULT_SEED, samples=50)
    assert all(r.passed for r in results)


def test_two_point_values():
    # B = -5, C = 1, D = 0, H = -7: the bracket D vanishes, so D = 0 whatever Z is
    inv = AffineInvariants(canonical_system("two-points", c=1, d=1, h=1, k=2, e=1, f=1, m=2, n=-3))
    assert inv.mu == 25 - 28
    assert inv.D == 0


def test_traceless_two_point_values():
    # c = 1, d = 2, h = 1, k = 0, e = 1, n = 1: I = -2 (h + n)(c² - eh) = 0, so C12 = 0
    inv = AffineInvariants(canonical_system("two-points-traceless", c=1, d=2, h=1, k=0, e=1, n=1))
    assert inv.C(1) == 0 and inv.C(4) == 0
    assert inv.C(8) == -Fraction(4, 3) * 4 * 3 * (1 - 2 - 2)
    assert inv.C(12) == 0
