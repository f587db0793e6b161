# File: invariants.py
# Description: Affine invariants A1-A26, their polynomials C1-C12/E1/E2 and the center-affine I-invariants

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm

import numpy as np
import sympy as sp

from comitants import ComitantSet
from config import QCenterConfig
from forms import BinaryForm, ContractionExpr, contract, to_number, transvectant
from system import QuadSystem


def _tv(f, g, k):
    return transvectant(f, g, k)


# Each entry maps a ComitantSet-backed evaluator to the scalar A_i
A_FORMULAS = {
    1: lambda c: c.Ahat,
    2: lambda c: _tv(c.Chat, c.Dhat, 3),
    3: lambda c: _tv(_tv(_tv(c.Chat, c.Ghat, 1), c.Ghat, 1), c.Ghat, 1),
    4: lambda c: _tv(c.Hhat, c.Hhat, 2),
    5: lambda c: _tv(c.Hhat, c.Khat, 2),
    6: lambda c: _tv(c.Ehat, c.Hhat, 2),
    7: lambda c: _tv(_tv(c.Chat, c.Ehat, 2), c.Ghat, 1),
    8: lambda c: _tv(_tv(c.Dhat, c.Hhat, 2), c.Ghat, 1),
    9: lambda c: _tv(_tv(_tv(c.Dhat, c.Ghat, 1), c.Ghat, 1), c.Ghat, 1),
    10: lambda c: _tv(_tv(c.Dhat, c.Khat, 2), c.Ghat, 1),
    11: lambda c: _tv(c.Fhat, c.Khat, 2),
    12: lambda c: _tv(c.Fhat, c.Hhat, 2),
    13: lambda c: _tv(_tv(_tv(c.Chat, c.Hhat, 1), c.Hhat, 2), c.Ghat, 1),
    14: lambda c: _tv(c.Bhat, c.Chat, 3),
    15: lambda c: _tv(c.Ehat, c.Fhat, 2),
    16: lambda c: _tv(_tv(_tv(c.Ehat, c.Ghat, 1), c.Chat, 1), c.Khat, 2),
    17: lambda c: _tv(_tv(c.DD2, c.Ghat, 1), c.Ghat, 1),
    18: lambda c: _tv(_tv(c.Dhat, c.Fhat, 2), c.Ghat, 1),
    19: lambda c: _tv(c.DD2, c.Hhat, 2),
    20: lambda c: _tv(c.CD2, c.Fhat, 2),
    21: lambda c: _tv(c.DD2, c.Khat, 2),
    22: lambda c: _tv(_tv(_tv(_tv(_tv(c.Chat, c.Dhat, 1), c.Ghat, 1), c.Ghat, 1), c.Ghat, 1), c.Ghat, 1),
    23: lambda c: _tv(_tv(c.Fhat, c.Hhat, 1), c.Khat, 2),
    24: lambda c: _tv(_tv(c.CD2, c.Khat, 1), c.Hhat, 2),
    25: lambda c: _tv(c.DD2, c.Ehat, 2),
    26: lambda c: _tv(c.Bhat, c.Dhat, 3),
}

# C_i and E_i as sums of weighted products of A-values: name -> ((weight, (i, j, ...)), ...).
# These are the weights as usually printed; C_POLYNOMIALS holds the ones actually evaluated.
PRINTED_C = {
    "C1": ((15, (2, 2)), (-33, (17,)), (-8, (18,)), (-63, (19,)), (-6, (20,)), (-9, (21,))),
    "C2": ((-3, (1, 2)), (2, (15,))),
    "C3": ((1, (2,)),),
    "C4": ((1, (7,)),),
    "C5": ((-1, (2, 3)), (2, (22,))),
    "C6": ((48, (1, 6)), (-12, (1, 7)), (12, (2, 4)), (-3, (2, 3)), (36, (2, 5)), (6, (22,)), (16, (23,))),
    "C7": ((-20, (1, 7)), (-1, (2, 3)), (2, (22,))),
    "C8": ((-6, (1, 1)), (-5, (8,)), (-1, (10,)), (-1, (11,)), (-3, (12,))),
    "C9": ((1, (4,)), (-1, (5,))),
    "C10": ((1, (26,)),),
    "C11": ((1, (2, 2)), (-10, (17,)), (-2, (18,)), (-6, (19,)), (6, (21,))),
    "C12": ((-10, (1, 1, 3)), (-9, (1, 1, 5)), (-3, (1, 16)), (30, (3, 8)), (-7, (3, 10)), (-5, (3, 11)),
            (-22, (4, 8)), (18, (4, 9)), (-11, (4, 10)), (3, (4, 11)), (54, (6, 7)), (90, (7, 7)),
            (48, (2, 13)), (-2, (6, 6)), (46, (5, 8)), (-2, (5, 9)), (5, (5, 10)), (-9, (5, 11))),
    "E1": ((1, (5,)),),
    "E2": ((1, (25,)),),
}

C_NAMES = tuple(f"C{i}" for i in range(1, 13)) + ("E1", "E2")

ORIGIN_EXPRESSIONS = {
    "I1": ContractionExpr.parse("a^a_a"),
    "I2": ContractionExpr.parse("a^a_b a^b_a"),
    "I3": ContractionExpr.parse("a^a_p a^b_aq a^c_bc e^pq"),
    "I4": ContractionExpr.parse("a^a_p a^b_bq a^c_ac e^pq"),
    "I5": ContractionExpr.parse("a^a_p a^b_cq a^c_ab e^pq"),
    "I6": ContractionExpr.parse("a^a_p a^b_c a^c_aq a^d_bd e^pq"),
    "I13": ContractionExpr.parse("a^a_p a^b_qr a^c_cs a^d_ab a^m_dm e^pq e^rs"),
    "I17": ContractionExpr.parse("a^a a^b_ab"),
    "I20": ContractionExpr.parse("a^a a^b a^c a^d_ab e_dc"),
}
K1_EXPRESSION = ContractionExpr.parse("a^a_ab x^b")

ORIGIN_NAMES = ("I1", "I2", "I3", "I4", "I5", "I6", "I13", "I17", "I20", "J2", "K1")


def evaluate_terms(terms, A):
    """sum of weight * A(i) * A(j) * ... over the terms"""
    total = Fraction(0)
    for weight, indices in terms:
        product = Fraction(weight)
        for i in indices:
            if not product:
                break
            product *= A(i)
        total += product
    return total


class AffineInvariants(ComitantSet):
    """Comitants plus memoised A/C/E values, computed only when asked for"""

    def __init__(self, sys):
        super().__init__(sys)
        self._a = {}
        self._c = {}
        self._i = {}

    @cached_property
    def DD2(self):
        return transvectant(self.Dhat, self.Dhat, 2)

    @cached_property
    def CD2(self):
        return transvectant(self.Chat, self.Dhat, 2)

    def A(self, i):
        if i not in self._a:
            self._a[i] = A_FORMULAS[i](self).scalar()
        return self._a[i]

    def C(self, name):
        if isinstance(name, int):
            name = f"C{name}"
        if name not in self._c:
            self._c[name] = evaluate_terms(c_polynomials()[name].terms, self.A)
        return self._c[name]

    def I(self, name):
        if name not in self._i:
            if name == "J2":
                i1 = self.I("I1")
                self._i[name] = i1 * (self.I("I2") - i1 ** 2) + 4 * i1 * self.I("I17") - 4 * self.I("I20")
            elif name == "K1":
                self._i[name] = contract(K1_EXPRESSION, self.sys)
            else:
                self._i[name] = contract(ORIGIN_EXPRESSIONS[name], self.sys).scalar()
        return self._i[name]

    def evaluated_c(self):
        """The C/E values computed so far, in index order"""
        order = lambda name: (name[0], int(name[1:]))
        return {name: self._c[name] for name in sorted(self._c, key=order)}

    def a_values(self):
        return tuple(self.A(i) for i in range(1, 27))

    def c_values(self):
        return {name: self.C(name) for name in C_NAMES}

    def origin_values(self):
        return {name: self.I(name) for name in ORIGIN_NAMES}


# -- calibration of the C-polynomials -------------------------------------------------
#
# Each C-polynomial is pinned down by the value it must take on a normal form whose
# singular points sit at (0, 0) and (1, 0) (or on every system with a zero-trace
# singular point at the origin, for C1). The printed weights are kept when they already
# reproduce those values; otherwise the weights are solved for exactly over the same
# monomials.

@dataclass(frozen=True)
class NormalForm:
    """A sampled family of systems and the value a C-polynomial must take on it"""
    name: str
    draw: object      # rng -> parameter dict
    build: object     # parameter dict -> QuadSystem
    target: object    # (parameter dict, AffineInvariants) -> value


@dataclass(frozen=True)
class Calibration:
    stages: tuple           # NormalForm tuples, tried in order
    sign_matters: bool = True


@dataclass(frozen=True)
class CalibratedPolynomial:
    name: str
    terms: tuple
    source: str     # "printed", "fitted on <normal forms>", or "unresolved"

    @property
    def resolved(self):
        return self.source != "unresolved"

    def weights(self):
        return tuple(weight for weight, _ in self.terms)


def two_point_system(c, d, h, k, e, f, m, n):
    """Quadratic system with singular points at (0, 0) and (1, 0)"""
    return QuadSystem.from_coefficients((0, c, d, -c, 2 * h, k, 0, e, f, -e, 2 * m, n))


def two_point_bars(p):
    """The bracket quantities (B, C, D, E, F, H) of a two-point system"""
    c, d, h, k, e, f, m, n = (p[name] for name in "cdhkefmn")
    return (c * n - e * k, c * m - e * h, d * e - c * f, d * n - f * k, f * h - d * m, h * n - k * m)


def two_point_c12(p):
    """C12 of a two-point system in closed form"""
    B, C, D, E, F, H = two_point_bars(p)
    c, f, h, m, n = p["c"], p["f"], p["h"], p["m"], p["n"]
    mu = B * B + 4 * C * H
    Z = (B - 2 * F) ** 2 + 4 * E * (D - 2 * C)
    R = ((c - m) * (2 * B * F + 4 * C * E - B * B) - 2 * (h + n) * (B * C - B * D + 2 * C * F)
         + (c + f) * mu)
    I = (m - c) * B - 2 * (h + n) * C
    s0, s1 = c + f, -c + f + 2 * m
    return (mu ** 2 * (s0 - s1) ** 2 - 4 * m * R * (s0 + s1) + 4 * Z * I ** 2) / 4


def _sample(rng):
    return Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 4)))


def _two_points(rng):
    return {name: _sample(rng) for name in "cdhkefmn"}


def _two_points_traced(rng):
    p = _two_points(rng)
    p["f"] = -p["c"]
    return p


def _two_points_traceless(rng):
    p = _two_points_traced(rng)
    p["m"] = p["c"]
    return p


def _two_points_linear(rng):
    p = _two_points_traced(rng)
    p.update(h=Fraction(0), k=Fraction(0), n=Fraction(0))
    return p


def _origin_traceless(rng):
    p = {name: _sample(rng) for name in ("p10", "p01", "p20", "p11", "p02", "q10", "q20", "q11", "q02")}
    p["q01"] = -p["p10"]
    return p


def _build_two_points(p):
    return two_point_system(**p)


def _traced(name, target):
    return NormalForm(name, _two_points_traced, _build_two_points, target)


TWO_POINTS = NormalForm("two-points", _two_points, _build_two_points, lambda p, inv: two_point_c12(p))
TWO_POINTS_TRACELESS = NormalForm("two-points-traceless", _two_points_traceless, _build_two_points,
                                  lambda p, inv: two_point_c12(p))
ORIGIN_TRACELESS = NormalForm("origin-traceless", _origin_traceless, lambda p: QuadSystem(**p),
                              lambda p, inv: 0)
C8_TRACELESS = NormalForm(
    "two-points-traceless", _two_points_traceless, _build_two_points,
    lambda p, inv: (-Fraction(4, 3) * (p["h"] + p["n"]) ** 2 * (p["c"] ** 2 + p["d"] * p["e"])
                    * (p["c"] ** 2 - p["d"] * p["e"] - 2 * p["e"] * p["h"])))
C11_LINEAR = NormalForm(
    "two-points-linear", _two_points_linear, _build_two_points,
    lambda p, inv: (Fraction(8, 3) * p["d"] ** 2 * p["m"] ** 2 * (p["c"] - p["m"]) ** 2
                    * (p["c"] ** 2 + p["d"] * p["e"])))

CALIBRATIONS = {
    "C1": Calibration(((ORIGIN_TRACELESS,),)),
    "C2": Calibration(((_traced("two-points-traced", lambda p, inv: 3 * inv.I("I2") * inv.A(7)),),)),
    "C5": Calibration(((_traced("two-points-traced", lambda p, inv: 6 * inv.I("I3") * inv.A(7)),),),
                      sign_matters=False),
    "C6": Calibration(((_traced("two-points-traced",
                                lambda p, inv: 6 * (5 * inv.I("I3") - 2 * inv.I("I4")) * inv.A(7)),),),
                      sign_matters=False),
    "C7": Calibration(((_traced("two-points-traced",
                                lambda p, inv: 2 * (13 * inv.I("I3") - 10 * inv.I("I5")) * inv.A(7)),),),
                      sign_matters=False),
    "C8": Calibration(((C8_TRACELESS,),)),
    "C11": Calibration(((C11_LINEAR,),)),
    "C12": Calibration(((TWO_POINTS,), (TWO_POINTS_TRACELESS,))),
}

EXTRA_SAMPLES = 4


def _rational(value):
    value = Fraction(value)
    return sp.Rational(value.numerator, value.denominator)


def _rows(terms, forms, rng):
    """One (monomial values, target) pair per sampled system"""
    rows = []
    per_form = -(-(len(terms) + EXTRA_SAMPLES) // len(forms))
    for form in forms:
        for _ in range(per_form):
            params = form.draw(rng)
            inv = AffineInvariants(form.build(params))
            monomials = [evaluate_terms(((1, indices),), inv.A) for _, indices in terms]
            rows.append((monomials, Fraction(form.target(params, inv))))
    return rows


def _agrees(weights, rows, sign_matters):
    """The weights reproduce every target up to one constant factor"""
    ratios = set()
    for monomials, target in rows:
        value = sum(w * v for w, v in zip(weights, monomials))
        if target == 0:
            if value != 0:
                return False
        else:
            ratios.add(value / target)
    if not ratios:
        return True
    if len(ratios) != 1:
        return False
    ratio = next(iter(ratios))
    return ratio != 0 and (ratio > 0 or not sign_matters)


def _primitive(vector):
    """Integer multiple with unit content whose first non-zero entry is positive"""
    scale = lcm(*(v.denominator for v in vector))
    integers = [int(v * scale) for v in vector]
    content = gcd(*integers)
    pivot = next(v for v in integers if v)
    sign = 1 if pivot > 0 else -1
    return tuple(Fraction(sign * v // content) for v in integers)


def _solve(rows):
    """Exact weights for the rows, or None when they admit no solution"""
    matrix = sp.Matrix([[_rational(v) for v in monomials] for monomials, _ in rows])
    targets = [target for _, target in rows]
    if not any(targets):
        kernel = matrix.nullspace()
        if len(kernel) != 1:
            return None
        return _primitive([Fraction(to_number(v)) for v in kernel[0]])
    try:
        solution, free = matrix.gauss_jordan_solve(sp.Matrix([_rational(t) for t in targets]))
    except ValueError:
        return None
    solution = solution.subs({symbol: 0 for symbol in free})
    return tuple(Fraction(to_number(v)) for v in solution)


def calibrate(name, calibration, seed=QCenterConfig.DEFAULT_SEED):
    """Keep the printed weights of one C-polynomial or solve for new ones"""
    printed = PRINTED_C[name]
    rng = np.random.default_rng(seed)
    for k, forms in enumerate(calibration.stages):
        rows = _rows(printed, forms, rng)
        if k == 0 and _agrees([w for w, _ in printed], rows, calibration.sign_matters):
            return CalibratedPolynomial(name, printed, "printed")
        weights = _solve(rows)
        if weights is None or not any(weights):
            continue
        # fitted weights are re-checked on fresh samples of the same forms
        if not _agrees(weights, _rows(printed, forms, rng), calibration.sign_matters):
            continue
        terms = tuple((w, indices) for w, (_, indices) in zip(weights, printed))
        return CalibratedPolynomial(name, terms, "fitted on " + ", ".join(f.name for f in forms))
    return CalibratedPolynomial(name, printed, "unresolved")


@lru_cache(maxsize=None)
def c_polynomials():
    """name -> CalibratedPolynomial for every C/E name"""
    return {name: calibrate(name, CALIBRATIONS[name]) if name in CALIBRATIONS
            else CalibratedPolynomial(name, PRINTED_C[name], "printed")
            for name in C_NAMES}


def calibration_report():
    """(name, source, weights) rows for the calibrated polynomials"""
    polynomials = c_polynomials()
    return [(name, polynomials[name].source, polynomials[name].weights()) for name in CALIBRATIONS]


def a_invariants(sys):
    """A1..A26 as a tuple (index 0 holds A1)"""
    return AffineInvariants(sys).a_values()


def c_invariants(a_values):
    """C1..C12, E1, E2 from the 26 A-values"""
    values = tuple(a_values)
    if len(values) != 26:
        raise ValueError(f"expected 26 A-values, got {len(values)}")
    lookup = lambda i: values[i - 1]
    polynomials = c_polynomials()
    return {name: evaluate_terms(polynomials[name].terms, lookup) for name in C_NAMES}


def origin_invariants(sys):
    return AffineInvariants(sys).origin_values()


@dataclass
class InvariantTable:
    A: tuple
    C: dict
    I: dict
    J1: object
    J2: object
    K1: BinaryForm
    comitants: dict = field(default_factory=dict)

    @property
    def E1(self):
        return self.C["E1"]

    @property
    def E2(self):
        return self.C["E2"]


TABLE_FORMS = ("Ahat", "Bhat", "Chat", "Dhat", "Ehat", "Fhat", "Ghat", "Hhat", "Khat",
               "B1", "B2", "B3", "B4", "B5", "H", "G", "F", "V", "Stilde", "Ntilde",
               "P", "R", "S", "T", "U")


def invariant_table(sys, inv=None):
    """Every scalar invariant and form-valued comitant of one system"""
    inv = inv or AffineInvariants(sys)
    a_values = inv.a_values()
    comitants = {name: getattr(inv, name) for name in TABLE_FORMS}
    comitants["mu"] = inv.mu
    comitants["D"] = inv.D
    origin = inv.origin_values()
    return InvariantTable(
        A=a_values,
        C=inv.c_values(),
        I={k: v for k, v in origin.items() if k not in ("J2", "K1")},
        J1=inv.J1,
        J2=origin["J2"],
        K1=origin["K1"],
        comitants=comitants,
    )


def identity_checks(sys, inv=None):
    """Algebraic identities between comitants and the equivalences used for the mu = D = 0 branch"""
    inv = inv or AffineInvariants(sys)
    checks = {
        "B3 == Hhat": inv.B3 == inv.Hhat,
        "Ntilde == Khat": inv.Ntilde == inv.Khat,
        "K1 == Ghat": inv.I("K1") == inv.Ghat,
        "E1 == A5": inv.C("E1") == inv.A(5),
        "E2 == A25": inv.C("E2") == inv.A(25),
        "C3 == A2": inv.C("C3") == transvectant(inv.Chat, inv.Dhat, 3).scalar(),
    }
    if inv.mu == 0:
        checks["mu = 0 => R == 12 H^2"] = inv.R == (inv.H * inv.H).scale(12)
        if inv.D == 0:
            g2_6hf = inv.G * inv.G - (inv.H * inv.F).scale(6)
            checks["R != 0 <=> H != 0"] = (not inv.R.is_zero()) == (not inv.H.is_zero())
            checks["P != 0 <=> G^2 - 6HF != 0"] = (not inv.P.is_zero()) == (not g2_6hf.is_zero())
    return checks
