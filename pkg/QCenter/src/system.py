# File: system.py
# Description: QuadSystem value type (12 coefficients, tensor accessors, affine changes) and record parsing

import re
from dataclasses import dataclass, fields
from fractions import Fraction
from functools import cached_property

from errors import PreconditionError, RecordParseError
from forms import BinaryForm, rational_to_string, to_number

COEFFICIENT_NAMES = ("p00", "p10", "p01", "p20", "p11", "p02",
                     "q00", "q10", "q01", "q20", "q11", "q02")

_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(token, line=None, column=None):
    """Read '3/7', '-2' or '0' exactly; anything float-like is refused"""
    text = token.strip()
    if not text:
        raise RecordParseError("empty coefficient", line, column)
    if not _RATIONAL.match(text):
        if re.match(r"^[+-]?(\d+\.\d*|\.\d+|\d+(\.\d*)?[eE][+-]?\d+)$", text):
            raise RecordParseError(f"floating-point coefficient {text!r} is not accepted, write it as a fraction",
                                   line, column)
        raise RecordParseError(f"cannot read {text!r} as a rational", line, column)
    if "/" in text and int(text.split("/")[1]) == 0:
        raise RecordParseError(f"zero denominator in {text!r}", line, column)
    return Fraction(text)


def parse_coefficients(text, line=None):
    """Parse 12 comma-separated rationals in the order p00..p02, q00..q02"""
    values = []
    offset = 0
    for token in text.split(","):
        column = offset + (len(token) - len(token.lstrip())) + 1
        values.append(parse_rational(token, line, column))
        offset += len(token) + 1
    if len(values) != 12:
        raise RecordParseError(f"expected 12 coefficients, found {len(values)}", line, 1)
    return QuadSystem.from_coefficients(values)


def _affine_product(l, m):
    """Product of two affine forms (cX, cY, c0) as (c00, c10, c01, c20, c11, c02)"""
    lx, ly, l0 = l
    mx, my, m0 = m
    return (l0 * m0, lx * m0 + l0 * mx, ly * m0 + l0 * my,
            lx * mx, lx * my + ly * mx, ly * my)


def _compose(coeffs, lx, ly):
    """P(lx, ly) for P given by (c00, c10, c01, c20, c11, c02) and affine forms lx, ly"""
    c00, c10, c01, c20, c11, c02 = coeffs
    out = [c00 + c10 * lx[2] + c01 * ly[2],
           c10 * lx[0] + c01 * ly[0],
           c10 * lx[1] + c01 * ly[1],
           0, 0, 0]
    for weight, (l, m) in ((c20, (lx, lx)), (c11, (lx, ly)), (c02, (ly, ly))):
        if weight == 0:
            continue
        for i, value in enumerate(_affine_product(l, m)):
            out[i] += weight * value
    return out


@dataclass(frozen=True)
class QuadSystem:
    """dx/dt = P(x, y), dy/dt = Q(x, y) with P, Q of degree at most two"""

    p00: Fraction = Fraction(0)
    p10: Fraction = Fraction(0)
    p01: Fraction = Fraction(0)
    p20: Fraction = Fraction(0)
    p11: Fraction = Fraction(0)
    p02: Fraction = Fraction(0)
    q00: Fraction = Fraction(0)
    q10: Fraction = Fraction(0)
    q01: Fraction = Fraction(0)
    q20: Fraction = Fraction(0)
    q11: Fraction = Fraction(0)
    q02: Fraction = Fraction(0)

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, to_number(getattr(self, f.name)))

    @classmethod
    def from_coefficients(cls, values):
        values = list(values)
        if len(values) != 12:
            raise ValueError(f"a quadratic system has 12 coefficients, got {len(values)}")
        return cls(*values)

    @classmethod
    def parse(cls, text, line=None):
        return parse_coefficients(text, line)

    def coefficients(self):
        return tuple(getattr(self, name) for name in COEFFICIENT_NAMES)

    def p_coefficients(self):
        return self.coefficients()[:6]

    def q_coefficients(self):
        return self.coefficients()[6:]

    # -- tensor notation ------------------------------------------------------

    @cached_property
    def _components(self):
        values = {}
        for j, (c00, c10, c01, c20, c11, c02) in ((1, self.p_coefficients()), (2, self.q_coefficients())):
            values[(j, ())] = c00
            values[(j, (1,))] = c10
            values[(j, (2,))] = c01
            values[(j, (1, 1))] = c20
            values[(j, (1, 2))] = c11 / 2
            values[(j, (2, 2))] = c02
        return values

    def components(self):
        """Tensor components keyed by (j, sorted lower indices)"""
        return self._components

    def a0(self, j):
        return self._components[(j, ())]

    def a1(self, j, alpha):
        return self._components[(j, (alpha,))]

    def a2(self, j, alpha, beta):
        return self._components[(j, tuple(sorted((alpha, beta))))]

    # -- homogeneous parts --------------------------------------------------

    def homogeneous_part(self, j, degree):
        c00, c10, c01, c20, c11, c02 = self.p_coefficients() if j == 1 else self.q_coefficients()
        return {0: BinaryForm(0, (c00,)), 1: BinaryForm(1, (c10, c01)), 2: BinaryForm(2, (c20, c11, c02))}[degree]

    def has_zero_quadratic_part(self):
        return all(c == 0 for c in (self.p20, self.p11, self.p02, self.q20, self.q11, self.q02))

    def linear_determinant(self):
        return self.p10 * self.q01 - self.p01 * self.q10

    # -- pointwise evaluation -------------------------------------------------

    def evaluate(self, x, y):
        p = self.p00 + self.p10 * x + self.p01 * y + self.p20 * x * x + self.p11 * x * y + self.p02 * y * y
        q = self.q00 + self.q10 * x + self.q01 * y + self.q20 * x * x + self.q11 * x * y + self.q02 * y * y
        return p, q

    def jacobian(self, x, y):
        return ((self.p10 + 2 * self.p20 * x + self.p11 * y, self.p01 + self.p11 * x + 2 * self.p02 * y),
                (self.q10 + 2 * self.q20 * x + self.q11 * y, self.q01 + self.q11 * x + 2 * self.q02 * y))

    def linearization(self, x, y):
        """Trace sigma and determinant delta of the Jacobian at (x, y)"""
        (px, py), (qx, qy) = self.jacobian(x, y)
        return px + qy, px * qy - py * qx

    # -- changes of coordinates -----------------------------------------------

    def transform(self, q, h=(0, 0)):
        """The system in coordinates X where x = q X + h (q a 2x2 matrix, det q != 0)"""
        (q11, q12), (q21, q22) = q
        det = q11 * q22 - q12 * q21
        if det == 0:
            raise PreconditionError("affine change of coordinates needs an invertible linear part")
        h1, h2 = h
        lx, ly = (q11, q12, h1), (q21, q22, h2)
        p = _compose(self.p_coefficients(), lx, ly)
        r = _compose(self.q_coefficients(), lx, ly)
        if isinstance(det, int):
            det = Fraction(det)
        inverse = ((q22 / det, -q12 / det), (-q21 / det, q11 / det))
        new_p = [inverse[0][0] * a + inverse[0][1] * b for a, b in zip(p, r)]
        new_q = [inverse[1][0] * a + inverse[1][1] * b for a, b in zip(p, r)]
        return QuadSystem.from_coefficients(new_p + new_q)

    def translate(self, h1, h2):
        """The system with the point (h1, h2) moved to the origin"""
        return self.transform(((1, 0), (0, 1)), (h1, h2))

    # -- presentation ----------------------------------------------------------

    def to_strings(self):
        return [rational_to_string(c) for c in self.coefficients()]

    def record(self):
        return ",".join(str(c) for c in self.coefficients())

    @staticmethod
    def _polynomial(c00, c10, c01, c20, c11, c02):
        terms = []
        for c, monomial in ((c00, ""), (c10, "x"), (c01, "y"), (c20, "x^2"), (c11, "x*y"), (c02, "y^2")):
            if c == 0:
                continue
            if not monomial:
                terms.append(str(c))
            elif c == 1:
                terms.append(monomial)
            elif c == -1:
                terms.append(f"-{monomial}")
            else:
                terms.append(f"{c}*{monomial}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __str__(self):
        return (f"x' = {self._polynomial(*self.p_coefficients())}, "
                f"y' = {self._polynomial(*self.q_coefficients())}")
