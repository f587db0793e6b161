##
## binary forms, transvectants and contractions
##

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings

from conftest import FOUR_NODES, forms, invertible, rationals, system
from errors import ContractionError, FormDegreeError
from forms import BinaryForm, ContractionExpr, contract, form_arith, parse_contraction, transvectant
from comitants import HAT_EXPRESSIONS

X1, X2 = BinaryForm.x1(), BinaryForm.x2()


def test_arith():
    assert X1 * X2 == BinaryForm(2, (0, 1, 0))
    f = BinaryForm(2, (1, -2, 3))
    assert form_arith(f, BinaryForm.zero(2), "add") == f
    assert form_arith(X1 + X2, Fraction(1, 2), "scale") == BinaryForm(1, (Fraction(1, 2), Fraction(1, 2)))
    assert f - f == BinaryForm.zero(2)
    assert (X1 + X2) ** 2 == BinaryForm(2, (1, 2, 1))
    assert -f == f.scale(-1)


def test_degree_errors():
    with pytest.raises(FormDegreeError):
        X1 + BinaryForm.constant(1)
    with pytest.raises(FormDegreeError):
        BinaryForm(2, (1, 2))
    with pytest.raises(FormDegreeError):
        X1.scalar()
    with pytest.raises(FormDegreeError):
        transvectant(X1, X1 * X1, 2)


def test_evaluate_and_derivative():
    f = BinaryForm(3, (1, 0, -1, 2))          # x1³ − x1 x2² + 2 x2³
    assert f.evaluate(1, 1) == 2
    assert f.evaluate(Fraction(1, 2), -1) == Fraction(1, 8) - Fraction(1, 2) - 2
    assert f.derivative(1, 0) == BinaryForm(2, (3, 0, -1))
    assert f.derivative(0, 2) == BinaryForm(1, (-2, 12))
    assert f.derivative(0, 0) == f


def test_substitute():
    # f(x1 + x2, x2) for f = x1 x2
    assert (X1 * X2).substitute(((1, 1), (0, 1))) == BinaryForm(2, (0, 1, 1))


def test_transvectant_values():
    assert transvectant(X1 * X2, X1 * X2, 2) == BinaryForm.constant(Fraction(-1, 2))
    assert transvectant(X1 * X1, X2 * X2, 2) == BinaryForm.constant(1)
    assert transvectant(X1, X2, 1) == BinaryForm.constant(1)


@settings(deadline=None, max_examples=50)
@given(forms(), forms())
def test_transvectant_zero_is_product(f, g):
    assert transvectant(f, g, 0) == f * g


@settings(deadline=None, max_examples=50)
@given(forms(max_degree=5))
def test_odd_transvectant_of_itself_vanishes(f):
    for k in range(1, f.degree + 1, 2):
        assert transvectant(f, f, k).is_zero()


@settings(deadline=None, max_examples=50)
@given(forms(), forms())
def test_transvectant_symmetry(f, g):
    for k in range(min(f.degree, g.degree) + 1):
        assert transvectant(f, g, k) == transvectant(g, f, k).scale((-1) ** k)


@settings(deadline=None, max_examples=30)
@given(forms(degree=3), forms(degree=3), forms(degree=2), rationals)
def test_transvectant_bilinear(f, g, h, r):
    for k in range(3):
        assert transvectant(f + g.scale(r), h, k) == transvectant(f, h, k) + transvectant(g, h, k).scale(r)


@settings(deadline=None, max_examples=30, suppress_health_check=[HealthCheck.large_base_example])
@given(forms(max_degree=4), forms(max_degree=4), invertible())
def test_transvectant_covariance(f, g, q):
    (a, b), (c, d) = q
    det = a * d - b * c
    for k in range(min(f.degree, g.degree) + 1):
        left = transvectant(f.substitute(q), g.substitute(q), k)
        right = transvectant(f, g, k).substitute(q).scale(det ** k)
        assert left == right


def test_parse_contraction():
    expr = parse_contraction("2 a^p a^q_ab x^a x^b e_pq - a^p_a a^q_b x^a x^b e_pq")
    assert len(expr.terms) == 2
    assert expr.terms[0][0] == 2 and expr.terms[1][0] == -1
    assert expr.degree == 2
    assert parse_contraction("a^a_ab x^b") == ContractionExpr.parse("a^a_ab x^b")


@pytest.mark.parametrize("text", [
    "a^p_q",                 # free index
    "a^a_a a^a_a",           # index used four times
    "a^p_kl x^k e_pq",       # q and l occur once
    "b^a_a",                 # unknown tensor
])
def test_malformed_contraction(text):
    with pytest.raises(ContractionError):
        parse_contraction(text)


def test_contract_hat_examples():
    square = system((0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 0, 0))      # P₂ = x², Q₂ = 0
    assert contract(HAT_EXPRESSIONS["Ghat"], square) == X1
    assert contract(HAT_EXPRESSIONS["Hhat"], square).is_zero()
    linear = system((1, 2, 3, 0, 0, 0), (4, 5, 6, 0, 0, 0))
    assert contract(HAT_EXPRESSIONS["Ahat"], linear).is_zero()
    assert contract("a^a_a", FOUR_NODES) == BinaryForm.constant(2)
