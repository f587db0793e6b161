# File: oracle.py
# Description: Independent center count: locate every finite singular point, translate it to the origin
#              and apply the origin center test there (no C-invariants involved)

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy as sp

from classifier import CENTER_INVARIANTS, center_at_origin, origin_center_test
from config import QCenterConfig
from errors import DegenerateSystemError, OracleError
from invariants import AffineInvariants

X, Y = sp.symbols("x y")
U, V = sp.symbols("u v")

SHEARS = (0, 1, -1, 2, -2, 3, -3, 4, -4)
INDETERMINATE = "indeterminate"
POINT_INVARIANTS = ("I1", "I2", "I6", "I13")

KIND_CANDIDATE = "center-candidate"
KIND_SADDLE = "saddle"
KIND_NODE = "node"
KIND_DEGENERATE = "degenerate"
KIND_COMPLEX = "complex"


def _encode(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def _decode(value):
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, list):
        return complex(value[0], value[1])
    return value


@dataclass
class SingularPoint:
    x: object
    y: object
    multiplicity: int
    sigma: object = None
    delta: object = None
    kind: str = ""
    exact: bool = True
    center: object = False
    invariants: dict = field(default_factory=dict)
    residual: float = 0.0

    @property
    def is_real(self):
        return self.kind != KIND_COMPLEX

    def to_dict(self):
        return {
            "x": _encode(self.x),
            "y": _encode(self.y),
            "multiplicity": self.multiplicity,
            "sigma": _encode(self.sigma),
            "delta": _encode(self.delta),
            "kind": self.kind,
            "exact": self.exact,
            "center": self.center,
            "invariants": {k: _encode(v) for k, v in self.invariants.items()},
            "residual": self.residual,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            x=_decode(data["x"]),
            y=_decode(data["y"]),
            multiplicity=data["multiplicity"],
            sigma=_decode(data.get("sigma")),
            delta=_decode(data.get("delta")),
            kind=data["kind"],
            exact=data.get("exact", True),
            center=data.get("center", False),
            invariants={k: _decode(v) for k, v in data.get("invariants", {}).items()},
            residual=data.get("residual", 0.0),
        )


@dataclass
class OracleVerdict:
    points: list
    center_count: object
    mode: str
    residuals: float = 0.0
    shear: int = 0
    diagnostics: list = field(default_factory=list)

    @property
    def total_multiplicity(self):
        return sum(p.multiplicity for p in self.points)

    def to_dict(self):
        return {
            "points": [p.to_dict() for p in self.points],
            "center_count": self.center_count,
            "mode": self.mode,
            "residuals": self.residuals,
            "shear": self.shear,
            "diagnostics": list(self.diagnostics),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            points=[SingularPoint.from_dict(p) for p in data["points"]],
            center_count=data["center_count"],
            mode=data["mode"],
            residuals=data.get("residuals", 0.0),
            shear=data.get("shear", 0),
            diagnostics=list(data.get("diagnostics", [])),
        )


# -- elimination --------------------------------------------------------------

def _rational(value):
    value = Fraction(value)
    return sp.Rational(value.numerator, value.denominator)


def _polynomials(sys):
    p = sum(_rational(c) * X ** i * Y ** j for c, (i, j) in
            zip(sys.p_coefficients(), ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))))
    q = sum(_rational(c) * X ** i * Y ** j for c, (i, j) in
            zip(sys.q_coefficients(), ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))))
    return sp.Poly(p, X, Y, domain=sp.QQ), sp.Poly(q, X, Y, domain=sp.QQ)


def _sheared(poly, t):
    return sp.Poly(poly.as_expr().subs({X: U, Y: V + t * U}, simultaneous=True), U, V, domain=sp.QQ)


@dataclass
class _Elimination:
    t: int
    p: sp.Poly
    q: sp.Poly
    lead: sp.Poly
    other: sp.Poly
    resultant: sp.Poly


def _eliminate(p, q):
    """Shear so that resultant roots separate the points; the first t with most distinct roots wins"""
    best = None
    for t in SHEARS:
        pt, qt = _sheared(p, t), _sheared(q, t)
        if pt.degree(U) == p.total_degree():
            lead, other = pt, qt
        elif qt.degree(U) == q.total_degree():
            lead, other = qt, pt
        else:
            continue
        res = sp.Poly(sp.resultant(pt.as_expr(), qt.as_expr(), U), V, domain=sp.QQ)
        if res.is_zero:
            raise DegenerateSystemError("the resultant vanishes identically")
        distinct = res.sqf_part().degree() if res.degree() > 0 else 0
        if best is None or distinct > best[0]:
            best = (distinct, _Elimination(t, pt, qt, lead, other, res))
        if distinct == max(res.degree(), 0):
            break
    if best is None:
        raise OracleError("no shear keeps a full-degree leading coefficient")
    return best[1]


def _u_coefficients(poly):
    """Coefficients of poly in U (highest first) as float coefficient lists in V"""
    return [[float(c) for c in sp.Poly(coeff, V, domain=sp.QQ).all_coeffs()]
            for coeff in sp.Poly(poly.as_expr(), U).all_coeffs()]


def _at(u_coeffs, u, v):
    return np.polyval([np.polyval(c, v) for c in u_coeffs], u)


def _exact_u(elim, v0):
    pu = sp.Poly(elim.p.as_expr().subs(V, v0), U, domain=sp.QQ)
    qu = sp.Poly(elim.q.as_expr().subs(V, v0), U, domain=sp.QQ)
    g = pu.gcd(qu)
    if g.is_zero or g.degree() < 1:
        raise OracleError(f"no common root over v = {v0}")
    g = g.sqf_part()
    if g.degree() != 1:
        raise OracleError(f"resultant root v = {v0} is shared by {g.degree()} points")
    return -g.nth(0) / g.nth(1)


def _to_fraction(value):
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


# -- numerics -----------------------------------------------------------------

def _float_system(sys):
    return tuple(float(c) for c in sys.coefficients())


def _residual(coeffs, x, y):
    p00, p10, p01, p20, p11, p02, q00, q10, q01, q20, q11, q02 = coeffs
    p = p00 + p10 * x + p01 * y + p20 * x * x + p11 * x * y + p02 * y * y
    q = q00 + q10 * x + q01 * y + q20 * x * x + q11 * x * y + q02 * y * y
    return p, q


def _newton(sys, x, y, steps=QCenterConfig.NEWTON_STEPS):
    coeffs = _float_system(sys)
    for _ in range(steps):
        p, q = _residual(coeffs, x, y)
        (a, b), (c, d) = sys.jacobian(x, y)
        a, b, c, d = float(a), float(b), float(c), float(d)
        det = a * d - b * c
        if abs(det) < 1e-14:
            break
        x, y = x - (d * p - b * q) / det, y - (a * q - c * p) / det
    return x, y


def _scaled_residual(sys, x, y):
    coeffs = _float_system(sys)
    p, q = _residual(coeffs, x, y)
    return max(abs(p), abs(q)) / (1 + max(abs(c) for c in coeffs))


def _numeric_points(sys, elim, factor, multiplicity):
    coeffs = [float(c) for c in factor.all_coeffs()]
    roots = sorted(np.roots(coeffs), key=lambda r: abs(r.imag))
    real_count = factor.count_roots()
    lead_u, other_u = _u_coefficients(elim.lead), _u_coefficients(elim.other)
    points = []
    for k, v0 in enumerate(roots):
        real = k < real_count
        v0 = complex(v0.real, 0.0) if real else complex(v0)
        lead_at = [np.polyval(c, v0) for c in lead_u]
        candidates = np.roots(lead_at)
        u0 = min(candidates, key=lambda u: abs(_at(other_u, u, v0)))
        x0, y0 = u0, v0 + elim.t * u0
        if real:
            x0, y0 = _newton(sys, float(np.real(x0)), float(np.real(y0)))
            points.append(SingularPoint(x0, y0, multiplicity, exact=False))
        else:
            points.append(SingularPoint(complex(x0), complex(y0), multiplicity, kind=KIND_COMPLEX, exact=False))
    return points


def _certify(sys, point):
    """Replace a numeric point by a nearby rational one when it is an exact zero"""
    limit = QCenterConfig.RATIONAL_DENOMINATOR_LIMIT
    xr = Fraction(point.x).limit_denominator(limit)
    yr = Fraction(point.y).limit_denominator(limit)
    if sys.evaluate(xr, yr) == (0, 0):
        return dataclasses.replace(point, x=xr, y=yr, exact=True, residual=0.0)
    return point


# -- classification of a point ---------------------------------------------------

def _kind_exact(sigma, delta):
    if delta == 0:
        return KIND_DEGENERATE
    if delta < 0:
        return KIND_SADDLE
    if sigma == 0:
        return KIND_CANDIDATE
    return KIND_NODE


def _kind_numeric(sigma, delta):
    zero = QCenterConfig.NUMERIC_ZERO
    if abs(delta) <= zero:
        return KIND_DEGENERATE
    if delta < 0:
        return KIND_SADDLE
    if abs(sigma) < QCenterConfig.AMBIGUITY_HIGH:
        return KIND_CANDIDATE
    return KIND_NODE


def _translated(sys, point):
    moved = sys.translate(point.x, point.y)
    if not point.exact:
        # float shift; the quadratic part stays exact
        moved = dataclasses.replace(moved, p00=Fraction(0), q00=Fraction(0))
    return moved


def _examine(sys, point):
    point.sigma, point.delta = sys.linearization(point.x, point.y)
    if point.exact:
        point.kind = _kind_exact(point.sigma, point.delta)
    else:
        point.sigma, point.delta = float(point.sigma), float(point.delta)
        point.kind = _kind_numeric(point.sigma, point.delta)

    moved = _translated(sys, point)
    inv = AffineInvariants(moved)
    point.invariants = {name: inv.I(name) for name in POINT_INVARIANTS}

    if point.multiplicity != 1 or point.kind != KIND_CANDIDATE:
        point.center = False
    elif point.exact:
        point.center = center_at_origin(moved, inv)
    else:
        low, high = QCenterConfig.AMBIGUITY_LOW, QCenterConfig.AMBIGUITY_HIGH
        if abs(point.sigma) > low:
            point.center = None
        else:
            values = {name: inv.I(name) for name in CENTER_INVARIANTS}
            point.center = origin_center_test(values, low, high)
    return point


def is_degenerate(sys):
    """True when P and Q share a nonconstant factor (infinitely many singular points)"""
    p, q = _polynomials(sys)
    if any(not poly.is_zero and poly.total_degree() == 0 for poly in (p, q)):
        return False
    if p.is_zero or q.is_zero:
        return True
    return p.gcd(q).total_degree() > 0


def _locate(sys, mode):
    if mode not in ("exact", "numeric"):
        raise ValueError(f"unknown oracle mode {mode!r}")
    p, q = _polynomials(sys)
    if any(not poly.is_zero and poly.total_degree() == 0 for poly in (p, q)):
        return [], 0
    if p.is_zero or q.is_zero:
        raise DegenerateSystemError("one right-hand side vanishes identically")
    common = p.gcd(q)
    if common.total_degree() > 0:
        raise DegenerateSystemError(f"P and Q share the factor {common.as_expr()}",
                                    common_factor=str(common.as_expr()))

    elim = _eliminate(p, q)
    if elim.resultant.degree() <= 0:
        return [], elim.t
    _, factors = elim.resultant.factor_list() if mode == "exact" else elim.resultant.sqf_list()

    points = []
    for factor, multiplicity in factors:
        if factor.degree() == 1:
            v0 = -factor.nth(0) / factor.nth(1)
            u0 = _exact_u(elim, v0)
            points.append(SingularPoint(_to_fraction(u0), _to_fraction(v0 + elim.t * u0), multiplicity))
            continue
        for point in _numeric_points(sys, elim, factor, multiplicity):
            if point.kind != KIND_COMPLEX:
                point = _certify(sys, point)
            if not point.exact:
                point.residual = _scaled_residual(sys, point.x, point.y)
            points.append(point)

    points = [point if point.kind == KIND_COMPLEX else _examine(sys, point) for point in points]
    points.sort(key=_point_order)
    return points, elim.t


def finite_singular_points(sys, mode="exact"):
    """All finite singular points, real and complex, with multiplicities"""
    points, _ = _locate(sys, mode)
    return points


def _point_order(point):
    if point.kind == KIND_COMPLEX:
        return (1, point.x.real, point.x.imag, point.y.real, point.y.imag)
    return (0, float(point.x), 0.0, float(point.y), 0.0)


def oracle_center_count(sys, mode="exact"):
    """Count centers by testing every simple real singular point at the origin"""
    points, shear = _locate(sys, mode)
    real = [p for p in points if p.kind != KIND_COMPLEX]
    verdict = OracleVerdict(points, 0, "exact" if all(p.exact for p in real) else "numeric", shear=shear)
    numeric = [p for p in real if not p.exact]
    verdict.residuals = max((p.residual for p in numeric), default=0.0)
    for point in numeric:
        if point.residual > QCenterConfig.NUMERIC_RESIDUAL:
            verdict.diagnostics.append(f"residual {point.residual:.3e} at ({point.x:.12g}, {point.y:.12g})")

    verdicts = [p.center for p in real]
    if any(v is None for v in verdicts):
        verdict.center_count = INDETERMINATE
        verdict.diagnostics.append("a trace lies in the ambiguity band, no verdict")
        return verdict
    verdict.center_count = sum(1 for v in verdicts if v)
    if verdict.center_count > 2:
        raise OracleError(f"{verdict.center_count} centers found, a quadratic system has at most two")
    return verdict
