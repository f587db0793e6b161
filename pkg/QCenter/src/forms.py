# File: forms.py
# Description: Exact binary forms, transvectants and the epsilon-tensor contraction evaluator

import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, perm

from errors import ContractionError, FormDegreeError


def to_number(value):
    """Coerce ints and strings to Fraction; Fractions and floats pass through"""
    if isinstance(value, (Fraction, float)):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, str)):
        return Fraction(value)
    # sympy Rational and friends expose p/q
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def sign(value):
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def rational_to_string(value):
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous polynomial in (x1, x2); coeffs[i] multiplies x1^(d-i) x2^i"""

    degree: int
    coeffs: tuple

    def __post_init__(self):
        if self.degree < 0:
            raise FormDegreeError(f"negative degree {self.degree}")
        coeffs = tuple(to_number(c) for c in self.coeffs)
        if len(coeffs) != self.degree + 1:
            raise FormDegreeError(
                f"degree {self.degree} form needs {self.degree + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, degree):
        return cls(degree, (Fraction(0),) * (degree + 1))

    @classmethod
    def constant(cls, value):
        return cls(0, (value,))

    @classmethod
    def from_coeffs(cls, coeffs):
        coeffs = tuple(coeffs)
        return cls(len(coeffs) - 1, coeffs)

    @classmethod
    def x1(cls):
        return cls(1, (1, 0))

    @classmethod
    def x2(cls):
        return cls(1, (0, 1))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def scalar(self):
        if self.degree != 0:
            raise FormDegreeError(f"expected a degree 0 form, got degree {self.degree}")
        return self.coeffs[0]

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if other.degree != self.degree:
            raise FormDegreeError(f"cannot add forms of degree {self.degree} and {other.degree}")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if other.degree != self.degree:
            raise FormDegreeError(f"cannot subtract forms of degree {self.degree} and {other.degree}")
        return BinaryForm(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return BinaryForm(self.degree, tuple(-c for c in self.coeffs))

    def scale(self, factor):
        factor = to_number(factor)
        return BinaryForm(self.degree, tuple(factor * c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            out = [Fraction(0)] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b != 0:
                        out[i + j] += a * b
            return BinaryForm(self.degree + other.degree, tuple(out))
        if isinstance(other, (int, Fraction, float)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent):
        result = BinaryForm.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    # -- calculus and evaluation ---------------------------------------------

    def evaluate(self, x1, x2):
        d = self.degree
        return sum((c * x1 ** (d - i) * x2 ** i for i, c in enumerate(self.coeffs) if c != 0),
                   Fraction(0))

    def derivative(self, n1, n2):
        """Partial derivative of order n1 in x1 and n2 in x2"""
        d = self.degree
        if n1 < 0 or n2 < 0 or n1 + n2 > d:
            raise FormDegreeError(f"cannot differentiate a degree {d} form {n1}+{n2} times")
        out = [Fraction(0)] * (d - n1 - n2 + 1)
        for i, c in enumerate(self.coeffs):
            if c == 0 or i < n2 or d - i < n1:
                continue
            out[i - n2] += c * perm(d - i, n1) * perm(i, n2)
        return BinaryForm(d - n1 - n2, tuple(out))

    def substitute(self, q):
        """Return f(q11*x1 + q12*x2, q21*x1 + q22*x2) for q = ((q11, q12), (q21, q22))"""
        (q11, q12), (q21, q22) = q
        first = BinaryForm(1, (q11, q12))
        second = BinaryForm(1, (q21, q22))
        d = self.degree
        result = BinaryForm.zero(d)
        for i, c in enumerate(self.coeffs):
            if c != 0:
                result = result + (first ** (d - i) * second ** i).scale(c)
        return result

    # -- presentation ----------------------------------------------------------

    def to_strings(self):
        return [rational_to_string(c) for c in self.coeffs]

    def __str__(self):
        d = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            powers = []
            if d - i:
                powers.append("x1" if d - i == 1 else f"x1^{d - i}")
            if i:
                powers.append("x2" if i == 1 else f"x2^{i}")
            monomial = "*".join(powers)
            if not monomial:
                terms.append(str(c))
            elif c == 1:
                terms.append(monomial)
            elif c == -1:
                terms.append(f"-{monomial}")
            else:
                terms.append(f"{c}*{monomial}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def form_arith(f, g, op):
    """Exact add/sub/mul of two forms, or scale(f, rational) when op == 'scale'"""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown form operation {op!r}")


def transvectant(f, g, k):
    """Transvectant of index k: (r-k)!(rho-k)!/(r!rho!) sum_h (-1)^h C(k,h) d^k f d^k g"""
    r, rho = f.degree, g.degree
    if k < 0 or k > min(r, rho):
        raise FormDegreeError(f"transvectant index {k} exceeds degrees {r} and {rho}")
    total = BinaryForm.zero(r + rho - 2 * k)
    for h in range(k + 1):
        term = f.derivative(k - h, h) * g.derivative(h, k - h)
        total = total + term.scale((-1) ** h * comb(k, h))
    return total.scale(Fraction(factorial(r - k) * factorial(rho - k), factorial(r) * factorial(rho)))


# -- epsilon contractions -----------------------------------------------------

EPSILON = {(1, 2): 1, (2, 1): -1, (1, 1): 0, (2, 2): 0}

_FACTOR = re.compile(r"^([axe])(?:\^([a-z]+))?(?:_([a-z]+))?$")
_COEFFICIENT = re.compile(r"^\d+(?:/\d+)?$")


@dataclass(frozen=True)
class TensorFactor:
    kind: str   # "a", "x" or "e"
    upper: tuple
    lower: tuple

    @classmethod
    def parse(cls, token):
        match = _FACTOR.match(token)
        if not match:
            raise ContractionError(f"unreadable tensor factor {token!r}")
        kind, upper, lower = match.group(1), tuple(match.group(2) or ""), tuple(match.group(3) or "")
        if kind == "a" and (len(upper) != 1 or len(lower) > 2):
            raise ContractionError(f"coefficient factor {token!r} needs one upper and at most two lower indices")
        if kind == "x" and (len(upper) != 1 or lower):
            raise ContractionError(f"variable factor {token!r} needs exactly one upper index")
        if kind == "e" and sorted((len(upper), len(lower))) != [0, 2]:
            raise ContractionError(f"epsilon factor {token!r} needs two indices on one side")
        return cls(kind, upper, lower)

    def __str__(self):
        text = self.kind
        if self.upper:
            text += "^" + "".join(self.upper)
        if self.lower:
            text += "_" + "".join(self.lower)
        return text


@dataclass(frozen=True)
class ContractionExpr:
    """Sum of scaled tensor products with Einstein summation over {1, 2}"""

    terms: tuple    # ((Fraction, (TensorFactor, ...)), ...)

    def __post_init__(self):
        if not self.terms:
            raise ContractionError("empty contraction")
        degrees = set()
        for _, factors in self.terms:
            ups, downs = Counter(), Counter()
            for factor in factors:
                ups.update(factor.upper)
                downs.update(factor.lower)
            for name in set(ups) | set(downs):
                if ups[name] != 1 or downs[name] != 1:
                    raise ContractionError(
                        f"index {name!r} must appear once up and once down, "
                        f"found {ups[name]} up and {downs[name]} down")
            degrees.add(sum(1 for factor in factors if factor.kind == "x"))
        if len(degrees) != 1:
            raise ContractionError(f"terms disagree on output degree: {sorted(degrees)}")

    @property
    def degree(self):
        _, factors = self.terms[0]
        return sum(1 for factor in factors if factor.kind == "x")

    @classmethod
    def parse(cls, text):
        """Read '2 a^p a^r_ac x^q e_pq - a^p_a a^r_c x^q e_pq' style notation"""
        terms = []
        coefficient, factors, started = Fraction(1), [], False
        for token in text.split():
            if token in ("+", "-"):
                if started:
                    terms.append((coefficient, tuple(factors)))
                coefficient = Fraction(-1 if token == "-" else 1)
                factors, started = [], True
            elif _COEFFICIENT.match(token):
                coefficient *= Fraction(token)
                started = True
            else:
                factors.append(TensorFactor.parse(token))
                started = True
        if started:
            terms.append((coefficient, tuple(factors)))
        return cls(tuple(terms))

    def __str__(self):
        return " + ".join(f"{c} " + " ".join(str(f) for f in factors) for c, factors in self.terms)


def parse_contraction(text):
    return ContractionExpr.parse(text)


def _bindings(names, eps_pairs):
    """Yield (sign, binding) for every assignment that keeps all epsilons nonzero"""
    def walk(k, binding, sign_so_far):
        if k == len(eps_pairs):
            free = [n for n in names if n not in binding]
            for mask in range(1 << len(free)):
                full = dict(binding)
                for bit, name in enumerate(free):
                    full[name] = 2 if mask >> bit & 1 else 1
                yield sign_so_far, full
            return
        p, q = eps_pairs[k]
        for vp, vq, s in ((1, 2, 1), (2, 1, -1)):
            if binding.get(p, vp) != vp or binding.get(q, vq) != vq:
                continue
            extended = dict(binding)
            extended[p], extended[q] = vp, vq
            yield from walk(k + 1, extended, sign_so_far * s)

    yield from walk(0, {}, 1)


@lru_cache(maxsize=None)
def compile_contraction(expr):
    """Expand an expression once into monomials over tensor components.

    Returns (degree, ((weight, component keys, x2 power), ...)) where a component
    key is (j, sorted lower index values)."""
    accumulated = defaultdict(Fraction)
    for coefficient, factors in expr.terms:
        names = sorted({n for f in factors for n in f.upper + f.lower})
        eps_pairs = [f.upper or f.lower for f in factors if f.kind == "e"]
        a_factors = [f for f in factors if f.kind == "a"]
        x_factors = [f for f in factors if f.kind == "x"]
        for s, binding in _bindings(names, eps_pairs):
            keys = tuple(sorted(
                (binding[f.upper[0]], tuple(sorted(binding[n] for n in f.lower))) for f in a_factors))
            power = sum(1 for f in x_factors if binding[f.upper[0]] == 2)
            accumulated[(keys, power)] += coefficient * s
    monomials = tuple((w, keys, power) for (keys, power), w in sorted(accumulated.items()) if w != 0)
    return expr.degree, monomials


def contract(expr, sys):
    """Evaluate a contraction on anything exposing components() (a QuadSystem)"""
    if isinstance(expr, str):
        expr = ContractionExpr.parse(expr)
    degree, monomials = compile_contraction(expr)
    values = sys.components()
    coeffs = [Fraction(0)] * (degree + 1)
    for weight, keys, power in monomials:
        term = weight
        for key in keys:
            value = values[key]
            if value == 0:
                break
            term = term * value
        else:
            coeffs[power] += term
    return BinaryForm(degree, tuple(coeffs))
