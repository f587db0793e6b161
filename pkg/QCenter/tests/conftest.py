##
## shared fixtures and strategies
##

import os
import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from forms import BinaryForm  # noqa: E402
from system import QuadSystem  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the acceptance-scale property runs")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-scale run, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def system(p, q):
    """ẋ = p[0] + p[1] x + p[2] y + p[3] x² + p[4] xy + p[5] y², same for ẏ with q"""
    return QuadSystem.from_coefficients(list(p) + list(q))


# The four systems whose center counts were derived by hand
TWO_CENTERS = system((0, 0, 1, 0, 0, -1), (0, -1, 0, 1, 0, 0))        # ẋ=y−y², ẏ=−x+x²
TRIPLE_POINT = system((0, 0, 0, 0, 2, 0), (0, 1, 0, -1, 0, 1))         # ẋ=2xy, ẏ=x−x²+y²
ONE_POINT = system((0, 0, 1, 1, 0, 0), (0, -1, 0, 0, 0, 0))            # ẋ=y+x², ẏ=−x
FOUR_NODES = system((0, 1, 0, -1, 0, 0), (0, 0, 1, 0, 0, -1))          # ẋ=x−x², ẏ=y−y²
NO_POINTS = system((1, 0, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0))             # ẋ=1, ẏ=x²
ROTATION = system((0, 0, -1, 0, 0, 0), (0, 1, 0, 0, 0, 0))             # ẋ=−y, ẏ=x


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
nonzero_rationals = rationals.filter(lambda r: r != 0)
systems = st.lists(rationals, min_size=12, max_size=12).map(QuadSystem.from_coefficients)
shifts = st.tuples(rationals, rationals)


@st.composite
def forms(draw, max_degree=6, degree=None):
    d = draw(st.integers(0, max_degree)) if degree is None else degree
    return BinaryForm(d, draw(st.tuples(*[rationals] * (d + 1))))


@st.composite
def unimodular(draw):
    """Integer 2x2 matrix with determinant 1, built from elementary shears"""
    q = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    for _ in range(draw(st.integers(1, 3))):
        k = draw(st.integers(-2, 2))
        (a, b), (c, d) = q
        if draw(st.booleans()):
            q = ((a + k * c, b + k * d), (c, d))
        else:
            q = ((a, b), (c + k * a, d + k * b))
    return q


def _lower_upper(entries):
    """[[a, 0], [k, b]] times [[1, l], [0, 1]]; a and b are never zero"""
    a, b, k, l = (Fraction(v) for v in entries)
    return ((a, a * l), (k, k * l + b))


def invertible():
    """Integer 2x2 matrix with nonzero determinant, drawn without rejection"""
    diagonal = st.sampled_from((1, -1, 2, -2, 3))
    return st.tuples(diagonal, diagonal, st.integers(-2, 2), st.integers(-2, 2)).map(_lower_upper)


@pytest.fixture
def worked_systems():
    return {"two-centers": TWO_CENTERS, "triple-point": TRIPLE_POINT,
            "one-point": ONE_POINT, "four-nodes": FOUR_NODES}
