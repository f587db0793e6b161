# File: families.py
# Description: Seeded generators of quadratic systems and the closed-form regression corpus

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy as sp

from classifier import count_centers
from config import QCenterConfig
from forms import BinaryForm
from invariants import AffineInvariants, two_point_bars, two_point_c12, two_point_system
from oracle import is_degenerate, oracle_center_count
from system import QuadSystem

MAX_ATTEMPTS = 200


def random_rational(rng, bound=5, max_den=4, nonzero=False):
    while True:
        value = Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, max_den + 1)))
        if value or not nonzero:
            return value


def random_affine_map(rng, bound=3):
    """A random rational (q, h) with det q != 0"""
    while True:
        q = ((random_rational(rng, bound), random_rational(rng, bound)),
             (random_rational(rng, bound), random_rational(rng, bound)))
        if q[0][0] * q[1][1] - q[0][1] * q[1][0] != 0:
            return q, (random_rational(rng, bound), random_rational(rng, bound))


def usable(sys):
    """Finitely many singular points and a genuine quadratic part"""
    return not sys.has_zero_quadratic_part() and not is_degenerate(sys)


def _first_usable(draw, rng):
    for _ in range(MAX_ATTEMPTS):
        sys = draw(rng)
        if sys is not None and usable(sys):
            return sys
    raise RuntimeError(f"no usable system after {MAX_ATTEMPTS} draws")


# -- canonical systems -----------------------------------------------------------

def _system(p, q):
    return QuadSystem.from_coefficients(list(p) + list(q))


CANONICAL_BUILDERS = {
    "three-points": (("c", "d", "e", "f", "h", "m"),
          lambda c, d, e, f, h, m: _system((0, c, d, -c, 2 * h, -d), (0, e, f, -e, 2 * m, -f))),
    "three-points-tied": (("c", "d", "e", "h"),
           lambda c, d, e, h: _system((0, c, d, -c, 2 * h, -d), (0, e, -c, -e, 2 * c, c))),
    "two-points": (("c", "d", "h", "k", "e", "f", "m", "n"), two_point_system),
    "two-points-traceless": (("c", "d", "h", "k", "e", "n"),
           lambda c, d, h, k, e, n: two_point_system(c, d, h, k, e, -c, c, n)),
    "reversible-rotation": (("c", "d"),
           lambda c, d: _system((0, 0, 1, 0, 2 * (1 - c), 0), (0, -1, 0, d, 0, c))),
    "rotation": (("a", "b", "c"),
           lambda a, b, c: _system((0, 0, -1, -c, 0, -a), (0, 1, 0, b, 2 * c, 0))),
    "hamiltonian-shear": (("d", "e", "h", "k"),
           lambda d, e, h, k: _system((0, 0, d, 0, 2 * h, k), (0, e, 0, -e, 0, -h))),
    "hamiltonian-fixed": (("d", "k"),
           lambda d, k: _system((0, 1, d, -1, 4, k), (0, 0, -1, 0, 2, -2))),
    "triple-origin": (("h", "m", "n", "f"),
           lambda h, m, n, f: _system((0, 0, 0, 0, 2 * h, 2 * f * h), (0, 1, f, -1, 2 * m, n))),
    "three-points-skew": (("c", "d", "e"),
           lambda c, d, e: _system((0, c, d, -c, 0, 0), (0, e, -c, -e, 2 * c, 0))),
    "graph-first": (("e", "f", "g", "l", "m"),
           lambda e, f, g, l, m: _system((0, 0, 1, g, 0, 0), (0, e, f, l, 2 * m, 0))),
    "linear-first": (("c", "e", "f", "m"),
           lambda c, e, f, m: _system((0, c, 1, 0, 0, 0), (0, e, f, 2 * c * m, 2 * m, 0))),
    "linear-first-cube": (("c", "e", "f", "n"),
           lambda c, e, f, n: _system((0, c, 1, 0, 0, 0), (0, e, f, c * c * n, 2 * c * n, n))),
}

CANONICAL_NAMES = tuple(CANONICAL_BUILDERS)


def canonical_system(name, **params):
    """One of the normal forms by name, e.g. canonical_system("reversible-rotation", c=2, d=1)"""
    try:
        names, build = CANONICAL_BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown canonical system {name!r}; choose from {', '.join(CANONICAL_NAMES)}")
    missing = set(names) - set(params)
    if missing:
        raise ValueError(f"system {name!r} needs parameters {sorted(missing)}")
    return build(*(Fraction(params[n]) for n in names))


def sample_parameters(name, rng):
    names, _ = CANONICAL_BUILDERS[name]
    return {n: random_rational(rng, nonzero=True) for n in names}


# -- placed points ---------------------------------------------------------------

def _sympy_rational(value):
    value = Fraction(value)
    return sp.Rational(value.numerator, value.denominator)


def _rational_vector(column):
    return [Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1])) for c in column]


def _random_combination(basis, rng):
    total = [Fraction(0)] * len(basis[0])
    for vector in basis:
        weight = random_rational(rng, bound=4, max_den=1)
        total = [a + weight * b for a, b in zip(total, vector)]
    return total


def system_through_points(points, rng):
    """Random P, Q vanishing at every given point (conic pencils through them)"""
    rows = []
    for x, y in points:
        x, y = _sympy_rational(x), _sympy_rational(y)
        rows.append([1, x, y, x * x, x * y, y * y])
    basis = [_rational_vector(v) for v in sp.Matrix(rows).nullspace()]
    if not basis:
        return None
    return _system(_random_combination(basis, rng), _random_combination(basis, rng))


def _distinct_points(rng, count):
    points = set()
    while len(points) < count:
        points.add((random_rational(rng, 3, 2), random_rational(rng, 3, 2)))
    return sorted(points)


def _generic_placement(rng):
    return system_through_points(_distinct_points(rng, int(rng.integers(3, 5))), rng)


CUBIC_MONOMIALS = ((1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3))


def hamiltonian_from_coefficients(h):
    """x' = H_y, y' = -H_x for H = sum h[k] x^i y^j over CUBIC_MONOMIALS"""
    H = dict(zip(CUBIC_MONOMIALS, (Fraction(c) for c in h)))
    p = (H[(0, 1)], H[(1, 1)], 2 * H[(0, 2)], H[(2, 1)], 2 * H[(1, 2)], 3 * H[(0, 3)])
    q = (-H[(1, 0)], -2 * H[(2, 0)], -H[(1, 1)], -3 * H[(3, 0)], -2 * H[(2, 1)], -H[(1, 2)])
    return _system(p, q)


def _hamiltonian_placement(rng):
    points = _distinct_points(rng, 3)
    rows = []
    for x, y in points:
        x, y = _sympy_rational(x), _sympy_rational(y)
        # H_x and H_y at the point, as linear forms in the nine coefficients
        rows.append([i * x ** (i - 1) * y ** j if i else 0 for i, j in CUBIC_MONOMIALS])
        rows.append([j * x ** i * y ** (j - 1) if j else 0 for i, j in CUBIC_MONOMIALS])
    basis = [_rational_vector(v) for v in sp.Matrix(rows).nullspace()]
    if not basis:
        return None
    return hamiltonian_from_coefficients(_random_combination(basis, rng))


def _reversible_placement(rng):
    """Points (r1, 0), (r2, 0), (s, y1), (s, -y1) of a system reversible under (y, t) -> (-y, -t)"""
    r1, r2, s = (random_rational(rng, 3, 2) for _ in range(3))
    if len({r1, r2, s}) < 3:
        return None
    y1 = random_rational(rng, 3, 2, nonzero=True)
    p11 = random_rational(rng, nonzero=True)
    q20 = random_rational(rng, nonzero=True)
    q00, q10 = q20 * r1 * r2, -q20 * (r1 + r2)
    q02 = -(q00 + q10 * s + q20 * s * s) / (y1 * y1)
    return _system((0, 0, -p11 * s, 0, p11, 0), (q00, q10, 0, q20, 0, q02))


PLACEMENTS = {"generic": _generic_placement,
              "hamiltonian-seeded": _hamiltonian_placement,
              "reversible-seeded": _reversible_placement}


def placed_points(rng, variant=None):
    """A system with rational singular points by construction, seen through a random affine map"""
    variant = variant or list(PLACEMENTS)[int(rng.integers(len(PLACEMENTS)))]
    sys = _first_usable(PLACEMENTS[variant], rng)
    q, h = random_affine_map(rng)
    return sys.transform(q, h)


# -- the other families -----------------------------------------------------------

def _hamiltonian(rng):
    return hamiltonian_from_coefficients([random_rational(rng) for _ in CUBIC_MONOMIALS])


def _reversible(rng):
    c = [random_rational(rng) for _ in range(12)]
    if rng.integers(2):
        # (x, t) -> (-x, -t): P even in x, Q odd in x
        return _system((c[0], 0, c[1], c[2], 0, c[3]), (0, c[4], 0, 0, c[5], 0))
    # (y, t) -> (-y, -t): P odd in y, Q even in y
    return _system((0, 0, c[0], 0, c[1], 0), (c[2], c[3], 0, c[4], 0, c[5]))


def _random(rng):
    coefficients = [random_rational(rng) if rng.random() > 0.3 else 0 for _ in range(12)]
    return QuadSystem.from_coefficients(coefficients)


def _canonical(rng):
    name = CANONICAL_NAMES[int(rng.integers(len(CANONICAL_NAMES)))]
    return canonical_system(name, **sample_parameters(name, rng))


GENERATORS = {
    "canonical": _canonical,
    "hamiltonian": _hamiltonian,
    "reversible": _reversible,
    "placed-points": None,
    "random": _random,
}


def generate_family(kind, seed=None, rng=None):
    """One usable system of the given family, reproducible from seed"""
    if kind not in GENERATORS:
        raise ValueError(f"unknown family {kind!r}; choose from {', '.join(QCenterConfig.FAMILIES)}")
    rng = rng if rng is not None else np.random.default_rng(seed)
    if kind == "placed-points":
        return placed_points(rng)
    if kind == "random":
        return _random(rng)
    return _first_usable(GENERATORS[kind], rng)


def family_corpus(kind, count, seed=QCenterConfig.DEFAULT_SEED):
    """count (id, system) pairs of one family, identical for identical seeds"""
    rng = np.random.default_rng(seed)
    return [(f"{kind}-{seed}-{i}", generate_family(kind, rng=rng)) for i in range(count)]


# -- closed-form regressions ------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    name: str
    relation: str       # "equal" or "proportional"
    computed: object    # (sys, inv, params) -> value
    expected: object = None   # params -> value
    when: object = None
    signed: bool = True     # proportional: the ratio must also be positive


@dataclass
class RegressionResult:
    system: str
    identity: str
    passed: bool
    samples: int
    detail: str = ""

    def to_dict(self):
        return {"system": self.system, "identity": self.identity, "passed": self.passed,
                "samples": self.samples, "detail": self.detail}


def _form(*coeffs):
    return BinaryForm.from_coeffs(coeffs)


def _fourth_point(p):
    cb, db, fb = _bars(p)
    mu = db * db - 4 * cb * fb
    return db * (db - 2 * fb) / mu, db * (db - 2 * cb) / mu


def _bars(p):
    cb = p["c"] * p["m"] - p["e"] * p["h"]
    db = p["d"] * p["e"] - p["c"] * p["f"]
    fb = p["f"] * p["h"] - p["d"] * p["m"]
    return cb, db, fb


def _traceless(p):
    return dict(p, f=-p["c"], m=p["c"])


def _two_point_mu(p):
    B, C, _, _, _, H = two_point_bars(p)
    return B * B + 4 * C * H


def _two_point_d(p):
    B, C, D, E, F, _ = two_point_bars(p)
    return -Fraction(2, 27) * D ** 2 * (D - 2 * C) ** 2 * ((B - 2 * F) ** 2 + 4 * E * (D - 2 * C))


REGRESSIONS = {
    "reversible-rotation": dict(
        generic=lambda p: p["c"] != 1 and p["d"] + 2 - 2 * p["c"] != 0,
        identities=(
            Identity("mu", "equal", lambda s, i, p: i.mu, lambda p: 4 * p["c"] * p["d"] * (p["c"] - 1) ** 2),
            Identity("D", "equal", lambda s, i, p: i.D,
                     lambda p: Fraction(8, 27) * p["c"] * (p["d"] + 2 - 2 * p["c"]) ** 3),
            Identity("C8", "equal", lambda s, i, p: i.C(8),
                     lambda p: Fraction(4, 3) * p["d"] * (p["d"] + 2 - 2 * p["c"])),
            Identity("C12", "equal", lambda s, i, p: i.C(12),
                     lambda p: -16 * p["c"] * p["d"] ** 2 * (p["c"] - 1) ** 2 * (p["d"] + 2 - 2 * p["c"])),
            Identity("C1", "equal", lambda s, i, p: i.C(1), lambda p: 0),
            Identity("C3", "equal", lambda s, i, p: i.C(3), lambda p: 0),
        )),
    "rotation": dict(
        generic=lambda p: p["a"] != 2 * p["c"] and 4 * p["a"] * p["c"] != p["b"] ** 2 + 8 * p["c"] ** 2,
        identities=(
            Identity("mu", "equal", lambda s, i, p: i.mu,
                     lambda p: p["a"] ** 2 * p["b"] ** 2 + 4 * p["a"] * p["c"] ** 3),
            Identity("D", "equal", lambda s, i, p: i.D,
                     lambda p: (Fraction(2, 27) * (p["a"] - 2 * p["c"]) ** 2
                                * (4 * p["a"] * p["c"] - p["b"] ** 2 - 8 * p["c"] ** 2))),
            Identity("C1", "equal", lambda s, i, p: i.C(1), lambda p: 0),
            Identity("C3", "equal", lambda s, i, p: i.C(3), lambda p: 0),
            Identity("C8", "equal", lambda s, i, p: i.C(8), lambda p: 0),
            Identity("C12", "equal", lambda s, i, p: i.C(12), lambda p: 0),
        )),
    "triple-origin": dict(
        generic=lambda p: p["f"] ** 2 + 2 * p["f"] * p["m"] != p["n"],
        identities=(
            Identity("mu", "equal", lambda s, i, p: i.mu,
                     lambda p: 4 * p["h"] ** 2 * (p["f"] ** 2 + 2 * p["f"] * p["m"] - p["n"])),
            Identity("C3", "proportional", lambda s, i, p: i.C(3),
                     lambda p: 2 * p["h"] * p["f"] * (p["f"] ** 2 + 2 * p["f"] * p["m"] - p["n"]), signed=False),
            Identity("C4 (f=0)", "equal", lambda s, i, p: i.C(4),
                     lambda p: Fraction(2, 3) * p["m"] * p["h"] * (p["h"] + p["n"]) ** 2, when=lambda p: p["f"] == 0),
            Identity("C9 (f=0)", "equal", lambda s, i, p: i.C(9),
                     lambda p: p["h"] * ((p["h"] + p["n"]) ** 2 + p["m"] ** 2 * p["n"]), when=lambda p: p["f"] == 0),
        )),
    "three-points": dict(
        generic=lambda p: all(_bars(p)) and _bars(p)[1] ** 2 != 4 * _bars(p)[0] * _bars(p)[2]
        and _bars(p)[1] != 2 * _bars(p)[0] and _bars(p)[1] != 2 * _bars(p)[2],
        identities=(
            Identity("mu", "equal", lambda s, i, p: i.mu,
                     lambda p: _bars(p)[1] ** 2 - 4 * _bars(p)[0] * _bars(p)[2]),
            Identity("D", "equal", lambda s, i, p: i.D,
                     lambda p: -Fraction(2, 27) * _bars(p)[1] ** 2 * (_bars(p)[1] - 2 * _bars(p)[0]) ** 2
                     * (_bars(p)[1] - 2 * _bars(p)[2]) ** 2),
            Identity("fourth singular point", "equal", lambda s, i, p: s.evaluate(*_fourth_point(p)),
                     lambda p: (0, 0)),
        )),
    "two-points": dict(
        generic=lambda p: _two_point_mu(p) != 0,
        identities=(
            Identity("mu", "equal", lambda s, i, p: i.mu, _two_point_mu),
            Identity("D", "equal", lambda s, i, p: i.D, _two_point_d),
            Identity("second singular point", "equal", lambda s, i, p: s.evaluate(1, 0), lambda p: (0, 0)),
        )),
    "two-points-traceless": dict(
        generic=lambda p: _two_point_mu(_traceless(p)) != 0,
        identities=(
            Identity("mu", "equal", lambda s, i, p: i.mu, lambda p: _two_point_mu(_traceless(p))),
            Identity("D", "equal", lambda s, i, p: i.D, lambda p: _two_point_d(_traceless(p))),
            Identity("C1", "equal", lambda s, i, p: i.C(1), lambda p: 0),
            Identity("C4", "equal", lambda s, i, p: i.C(4), lambda p: 0),
            Identity("C8", "equal", lambda s, i, p: i.C(8),
                     lambda p: (-Fraction(4, 3) * (p["h"] + p["n"]) ** 2 * (p["c"] ** 2 + p["d"] * p["e"])
                                * (p["c"] ** 2 - p["d"] * p["e"] - 2 * p["e"] * p["h"]))),
            Identity("C12", "equal", lambda s, i, p: i.C(12), lambda p: two_point_c12(_traceless(p))),
        )),
    "linear-first-cube": dict(
        generic=lambda p: p["c"] * p["f"] != p["e"],
        identities=(
            Identity("mu", "equal", lambda s, i, p: i.mu, lambda p: 0),
            Identity("H", "equal", lambda s, i, p: i.H.is_zero(), lambda p: True),
            Identity("G", "equal", lambda s, i, p: i.G.is_zero(), lambda p: True),
            Identity("F", "proportional", lambda s, i, p: i.F,
                     lambda p: (_form(p["c"], 1) ** 3).scale(p["n"] * (p["c"] * p["f"] - p["e"])), signed=False),
            Identity("J1", "equal", lambda s, i, p: i.J1, lambda p: p["c"] * p["f"] - p["e"]),
            Identity("J2", "equal", lambda s, i, p: i.I("J2"),
                     lambda p: 2 * (p["c"] + p["f"]) * (p["e"] - p["c"] * p["f"])),
            Identity("I1", "equal", lambda s, i, p: i.I("I1"), lambda p: p["c"] + p["f"]),
            Identity("I2", "equal", lambda s, i, p: i.I("I2"),
                     lambda p: (p["c"] + p["f"]) ** 2 + 2 * (p["e"] - p["c"] * p["f"])),
        )),
    "linear-first": dict(
        generic=lambda p: p["c"] + p["f"] != 0,
        identities=(
            Identity("I1", "equal", lambda s, i, p: i.I("I1"), lambda p: p["c"] + p["f"]),
            Identity("I2", "equal", lambda s, i, p: i.I("I2"),
                     lambda p: (p["c"] + p["f"]) ** 2 + 2 * (p["e"] - p["c"] * p["f"])),
            Identity("I6", "proportional", lambda s, i, p: i.I("I6"), lambda p: -p["m"] ** 2 * (p["c"] + p["f"]), signed=False),
            Identity("I13", "equal", lambda s, i, p: i.I("I13"), lambda p: 0),
        )),
    "three-points-skew": dict(
        generic=lambda p: p["c"] ** 2 + p["d"] * p["e"] != 0 and p["c"] ** 2 != p["d"] * p["e"],
        identities=(
            Identity("classifier centers", "equal", lambda s, i, p: count_centers(s, i).center_count, lambda p: 1),
            Identity("oracle centers", "equal", lambda s, i, p: oracle_center_count(s).center_count, lambda p: 1),
        )),
}


def _ratio(computed, expected):
    """computed / expected for scalars or forms, None if they are not proportional"""
    if isinstance(expected, BinaryForm):
        if computed.degree != expected.degree:
            return None
        pivot = next((k for k, c in enumerate(expected.coeffs) if c != 0), None)
        if pivot is None:
            return 0 if computed.is_zero() else None
        ratio = Fraction(computed.coeffs[pivot]) / expected.coeffs[pivot]
        return ratio if computed == expected.scale(ratio) else None
    if expected == 0:
        return 0 if computed == 0 else None
    return Fraction(computed) / Fraction(expected)


def _judge(identity, pairs):
    if identity.relation == "equal":
        bad = [(c, e) for c, e in pairs if c != e]
        return not bad, "" if not bad else f"computed {bad[0][0]}, expected {bad[0][1]}"
    ratios = [_ratio(c, e) for c, e in pairs]
    if any(r is None for r in ratios):
        return False, "not proportional to the closed form"
    nonzero = {r for r in ratios if r != 0}
    if len(nonzero) > 1:
        return False, f"ratio varies between samples: {sorted(nonzero)[:2]}"
    if identity.signed and nonzero and next(iter(nonzero)) < 0:
        return False, f"negative ratio {next(iter(nonzero))}"
    return True, "" if not nonzero else f"ratio {next(iter(nonzero))}"


def _regression_parameters(name, rng, k, generic):
    for _ in range(MAX_ATTEMPTS):
        params = sample_parameters(name, rng)
        if name == "triple-origin" and k % 2 == 0:
            params["f"] = Fraction(0)
        if generic(params):
            return params
    raise RuntimeError(f"no generic parameters for system {name!r}")


def run_regressions(seed=QCenterConfig.DEFAULT_SEED, samples=5, names=None):
    """Check the closed forms of the canonical systems at sampled parameters"""
    rng = np.random.default_rng(seed)
    results = []
    for name in names or REGRESSIONS:
        entry = REGRESSIONS[name]
        collected = {identity.name: [] for identity in entry["identities"]}
        for k in range(samples):
            params = _regression_parameters(name, rng, k, entry["generic"])
            sys = canonical_system(name, **params)
            inv = AffineInvariants(sys)
            for identity in entry["identities"]:
                if identity.when is not None and not identity.when(params):
                    continue
                expected = identity.expected(params) if identity.expected else None
                collected[identity.name].append((identity.computed(sys, inv, params), expected))
        for identity in entry["identities"]:
            pairs = collected[identity.name]
            passed, detail = _judge(identity, pairs) if pairs else (True, "no sample met the side condition")
            results.append(RegressionResult(name, identity.name, passed, len(pairs), detail))
    return results
