##
## singular-point partition, sign evaluation and center counts
##

from fractions import Fraction
from itertools import islice

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings

from classifier import (NOT_APPLICABLE, PARTITION, ClassificationReport, SignTranscript, center_at_origin,
                        classify_mf, count_centers, enumerate_points, partition_matches, sign_at_common_point,
                        single_point)
from comitants import ComitantSet
from conftest import (FOUR_NODES, NO_POINTS, ONE_POINT, ROTATION, TRIPLE_POINT, TWO_CENTERS, invertible,
                      shifts, system, systems)
from errors import ClassificationError, PreconditionError
from families import canonical_system, generate_family
from forms import BinaryForm

X1, X2 = BinaryForm.x1(), BinaryForm.x2()
PARABOLA = (0, 0, 1, -1, 0, 0)          # ẋ = y − x²

# One system per set: ẋ = y − x² against a second conic placing the points
REPRESENTATIVES = {
    "M1": FOUR_NODES,
    "M2": system((0, 0, -1, 1, 0, 0), (-1, 0, 0, 0, 0, 1)),
    "M3": system((0, 0, -1, 1, 0, 0), (1, 0, 1, 0, 0, 1)),
    "M4": system(PARABOLA, (0, 0, -1, 0, 0, 1)),
    "M5": system(PARABOLA, (0, 0, 1, 0, 0, 1)),
    "M6": system(PARABOLA, (1, 0, -2, 0, 0, 1)),
    "M7": system(PARABOLA, (1, 0, 2, 0, 0, 1)),
    "M8": TRIPLE_POINT,
    "M9": system(PARABOLA, (0, 0, 0, 0, 0, 1)),
    "M10": system(PARABOLA, (0, -1, 0, 0, 1, 0)),
    "M11": system(PARABOLA, (0, 1, 0, 0, 1, 0)),
    "M12": system(PARABOLA, (0, 1, 0, -2, 1, 0)),
    "M13": system(PARABOLA, (0, 0, 0, 0, 1, 0)),
    "M14": system(PARABOLA, (-1, 0, 0, 1, 0, 0)),
    "M15": system(PARABOLA, (1, 0, 0, 1, 0, 0)),
    "M16": system(PARABOLA, (0, 0, 0, 1, 0, 0)),
    "M17": ONE_POINT,
    "M18": NO_POINTS,
    "M19": system((0,) * 6, (0,) * 6),
}


def test_enumerate_points():
    expected = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (2, -1), (1, -2)]
    assert list(islice(enumerate_points(), 8)) == [(Fraction(a), Fraction(b)) for a, b in expected]


def test_sign_at_common_point():
    t = sign_at_common_point([X1 * X1 + X2 * X2])
    assert t.point == (1, 0) and t.signs == {"f0": 1} and t.consistent

    t = sign_at_common_point([BinaryForm.constant(-3)], ["c"])
    assert t.signs == {"c": -1}

    t = sign_at_common_point([X1 * X2, X1 * X1], ["a", "b"])
    assert t.point == (1, 1)
    assert t.signs == {"a": 1, "b": 1}
    assert not t.consistent                 # x1 x2 changes sign at (1, -1)
    assert "(1, -1)" in t.diagnostics


def test_sign_of_zero_form():
    with pytest.raises(ValueError):
        sign_at_common_point([X1, BinaryForm.zero(2)])


def test_transcript_round_trip():
    t = sign_at_common_point([X1 * X2, X1 * X1], ["a", "b"])
    assert SignTranscript.from_dict(t.to_dict()) == t


def test_partition_has_nineteen_rows():
    assert [row.set_index for row in PARTITION] == [f"M{j}" for j in range(1, 20)]


@pytest.mark.parametrize("index", sorted(REPRESENTATIVES, key=lambda s: int(s[1:])))
def test_representatives(index):
    sys = REPRESENTATIVES[index]
    assert partition_matches(sys) == [index]
    m_f, pattern, set_index, _ = classify_mf(sys)
    assert set_index == index


def test_classify_mf_four_nodes():
    m_f, pattern, set_index, transcript = classify_mf(FOUR_NODES)
    assert (m_f, pattern, set_index) == (4, "r1 r1 r1 r1", "M1")
    assert set(transcript.signs) == {"R", "S"}


@settings(deadline=None, max_examples=200)
@given(systems)
def test_partition_is_total_and_disjoint(sys):
    assert len(partition_matches(sys)) == 1


@pytest.mark.slow
def test_partition_acceptance_run():
    rng = np.random.default_rng(0)
    for _ in range(10_000):
        assert len(partition_matches(generate_family("random", rng=rng))) == 1


@pytest.mark.parametrize("sys, set_index, centers, rule", [
    (TWO_CENTERS, "M1", 2, "Thm1(iii)"),
    (TRIPLE_POINT, "M8", 1, "Thm4"),
    (ONE_POINT, "M17", 1, "Thm9(ii)"),
    (NO_POINTS, "M18", 0, "M18-no-finite-points"),
    (REPRESENTATIVES["M3"], "M3", 0, "M3-no-real-points"),
    (REPRESENTATIVES["M16"], "M16", 0, "M16-no-simple-real-point"),
])
def test_worked_center_counts(sys, set_index, centers, rule):
    report = count_centers(sys)
    assert (report.set_index, report.center_count, report.fired_rule) == (set_index, centers, rule)


SHIFTS = [(1, 0), (Fraction(-1, 2), 2), (3, Fraction(1, 3))]


@pytest.mark.parametrize("h", SHIFTS)
@pytest.mark.parametrize("index", ["M14", "M15", "M16", "M17"])
def test_mu_zero_verdict_survives_shifts(index, h):
    sys, shifted = REPRESENTATIVES[index], REPRESENTATIVES[index].translate(*h)
    before, after = count_centers(sys), count_centers(shifted)
    assert before.set_index == index
    assert (after.set_index, after.center_count) == (before.set_index, before.center_count)
    assert ComitantSet(shifted).U.is_zero() == ComitantSet(sys).U.is_zero()


@pytest.mark.parametrize("h", SHIFTS)
def test_single_point_center_away_from_origin(h):
    # ẋ = x + y, ẏ = −2x − y + (x + y)²: one point, a center, after any shift
    sys = canonical_system("linear-first-cube", c=1, e=-2, f=-1, n=1)
    shifted = sys.translate(*h)
    assert single_point(shifted) == (-Fraction(h[0]), -Fraction(h[1]))
    report = count_centers(shifted)
    assert (report.set_index, report.center_count, report.fired_rule) == ("M17", 1, "Thm9(ii)")


def test_single_point_of_one_point_system():
    assert single_point(ONE_POINT) == (0, 0)
    assert count_centers(ONE_POINT.translate(2, -1)).center_count == 1


def test_single_point_needs_one_point():
    with pytest.raises(ClassificationError):
        single_point(FOUR_NODES)


def test_four_nodes_have_no_center():
    report = count_centers(FOUR_NODES)
    assert report.set_index == "M1" and report.center_count == 0
    assert report.fired_rule in ("Lemma1-veto", "Thm1-none")
    assert "C1" in report.conditions


def test_degenerate_systems():
    report = count_centers(REPRESENTATIVES["M19"])
    assert report.center_count == NOT_APPLICABLE
    assert report.fired_rule == "M19-degenerate"
    assert "degenerate" in report.diagnostics[0]
    assert "zero quadratic part" in report.diagnostics[0]

    report = count_centers(system((0, 1, 0, 1, 0, 0), (0, 1, 0, 1, 0, 0)))     # P = Q = x + x²
    assert report.set_index == "M19"
    assert "infinitely many" in report.diagnostics[0]


def test_report_round_trip():
    report = count_centers(TWO_CENTERS)
    assert ClassificationReport.from_dict(report.to_dict()) == report


def test_center_at_origin():
    assert center_at_origin(ROTATION)
    assert not center_at_origin(system((0, 1, -1, 0, 0, 0), (0, 1, 1, 0, 0, 0)))
    # ẋ = y + x² + xy, ẏ = −x − x² + 3xy + 2y²
    assert center_at_origin(system((0, 0, 1, 1, 1, 0), (0, -1, 0, -1, 3, 2)))
    with pytest.raises(PreconditionError):
        center_at_origin(system((1, 0, -1, 0, 0, 0), (0, 1, 0, 0, 0, 0)))


@settings(deadline=None, max_examples=25, suppress_health_check=[HealthCheck.large_base_example])
@given(systems, invertible(), shifts)
def test_verdict_affine_invariance(sys, q, h):
    before, after = count_centers(sys), count_centers(sys.transform(q, h))
    assert (before.set_index, before.center_count) == (after.set_index, after.center_count)


@pytest.mark.slow
def test_verdict_affine_invariance_acceptance_run():
    from families import random_affine_map
    rng = np.random.default_rng(1)
    for _ in range(200):
        sys = generate_family("random", rng=rng)
        before = count_centers(sys)
        for _ in range(10):
            q, h = random_affine_map(rng)
            after = count_centers(sys.transform(q, h))
            assert (before.set_index, before.center_count) == (after.set_index, after.center_count)
