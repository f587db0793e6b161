# File: classifier.py
# Description: Singular-point partition M1-M19, common-point sign evaluation and the center-count decision

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import sympy as sp

from config import QCenterConfig
from errors import ClassificationError, PreconditionError
from forms import sign
from invariants import AffineInvariants

MF_INFINITE = "infinite"
NOT_APPLICABLE = "not-applicable"


@dataclass
class SignTranscript:
    """Where the signs of a group of forms were read, and whether three more points agreed"""

    point: tuple = None
    signs: dict = field(default_factory=dict)
    samples: list = field(default_factory=list)
    consistent: bool = True
    diagnostics: str = ""

    def to_dict(self):
        return {
            "point": None if self.point is None else [str(c) for c in self.point],
            "signs": {name: "+" if s > 0 else "-" for name, s in self.signs.items()},
            "samples": [[str(c) for c in p] for p in self.samples],
            "consistent": self.consistent,
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_dict(cls, data):
        point = data.get("point")
        return cls(
            point=None if point is None else tuple(Fraction(c) for c in point),
            signs={name: 1 if s == "+" else -1 for name, s in data.get("signs", {}).items()},
            samples=[tuple(Fraction(c) for c in p) for p in data.get("samples", [])],
            consistent=data.get("consistent", True),
            diagnostics=data.get("diagnostics", ""),
        )


def enumerate_points():
    """(1,0), (0,1), (1,1), (1,-1), (2,1), (1,2), (2,-1), (1,-2), (3,1), ...

    Primitive integer directions by increasing |a|+|b|; on each level the ones
    with nonnegative second coordinate come first."""
    s = 1
    while True:
        for a in range(s, -1, -1):
            if gcd(a, s - a) == 1:
                yield Fraction(a), Fraction(s - a)
        for a in range(s - 1, 0, -1):
            if gcd(a, s - a) == 1:
                yield Fraction(a), Fraction(a - s)
        s += 1


def sign_at_common_point(forms, names=None, samples=QCenterConfig.CONSISTENCY_SAMPLES):
    """Signs of nonzero forms at the first enumerated point where none of them vanishes"""
    forms = list(forms)
    names = list(names) if names is not None else [f"f{i}" for i in range(len(forms))]
    if len(names) != len(forms):
        raise ValueError("one name per form is required")
    for name, form in zip(names, forms):
        if form.is_zero():
            raise ValueError(f"form {name} is identically zero, it has no sign")

    transcript = SignTranscript()
    if not forms:
        return transcript
    mismatches = []
    for x1, x2 in enumerate_points():
        values = [form.evaluate(x1, x2) for form in forms]
        if any(v == 0 for v in values):
            continue
        signs = {name: sign(v) for name, v in zip(names, values)}
        if transcript.point is None:
            transcript.point = (x1, x2)
            transcript.signs = signs
            continue
        transcript.samples.append((x1, x2))
        if signs != transcript.signs:
            mismatches.append(f"({x1}, {x2})")
        if len(transcript.samples) >= samples:
            break
    if mismatches:
        transcript.consistent = False
        transcript.diagnostics = "signs differ from the first point at " + ", ".join(mismatches)
    return transcript


# -- partition -------------------------------------------------------------------

class _PartitionContext:
    """Comitant values for the partition, plus one sign transcript per group of forms"""

    GROUPS = {"R": ("R", "S"), "S": ("R", "S"), "T": ("T",), "PR": ("PR",), "U": ("U",)}

    def __init__(self, inv):
        self.inv = inv
        self.transcripts = {}

    def form(self, name):
        if name == "PR":
            return self.inv.P * self.inv.R
        return getattr(self.inv, name)

    def zero(self, name):
        return self.form(name).is_zero()

    def transcript(self, name):
        group = self.GROUPS[name]
        if group not in self.transcripts:
            live = [n for n in group if not self.zero(n)]
            self.transcripts[group] = sign_at_common_point([self.form(n) for n in live], live)
        return self.transcripts[group]

    def sgn(self, name):
        if self.zero(name):
            return 0
        return self.transcript(name).signs[name]


@dataclass(frozen=True)
class PartitionRow:
    set_index: str
    m_f: object
    pattern: str
    predicate: object
    sign_group: str = None

    def matches(self, ctx):
        return self.predicate(ctx)


def _mu(c):
    return c.inv.mu


def _d(c):
    return c.inv.D


PARTITION = (
    PartitionRow("M1", 4, "r1 r1 r1 r1", lambda c: _mu(c) != 0 and _d(c) < 0 and c.sgn("R") > 0 and c.sgn("S") > 0, "R"),
    PartitionRow("M2", 4, "r1 r1 c1 c1", lambda c: _mu(c) != 0 and _d(c) > 0),
    PartitionRow("M3", 4, "c1 c1 c1 c1", lambda c: _mu(c) != 0 and _d(c) < 0 and (c.sgn("R") <= 0 or c.sgn("S") <= 0), "R"),
    PartitionRow("M4", 4, "r2 r1 r1", lambda c: _mu(c) != 0 and _d(c) == 0 and c.sgn("T") < 0, "T"),
    PartitionRow("M5", 4, "r2 c1 c1", lambda c: _mu(c) != 0 and _d(c) == 0 and c.sgn("T") > 0, "T"),
    PartitionRow("M6", 4, "r2 r2", lambda c: _mu(c) != 0 and _d(c) == 0 and c.zero("T") and c.sgn("PR") > 0, "PR"),
    PartitionRow("M7", 4, "c2 c2", lambda c: _mu(c) != 0 and _d(c) == 0 and c.zero("T") and c.sgn("PR") < 0, "PR"),
    PartitionRow("M8", 4, "r3 r1", lambda c: _mu(c) != 0 and _d(c) == 0 and c.zero("T") and c.zero("P") and not c.zero("R")),
    PartitionRow("M9", 4, "r4", lambda c: _mu(c) != 0 and _d(c) == 0 and c.zero("T") and c.zero("P") and c.zero("R")),
    PartitionRow("M10", 3, "r1 r1 r1", lambda c: _mu(c) == 0 and _d(c) < 0 and not c.zero("R")),
    PartitionRow("M11", 3, "r1 c1 c1", lambda c: _mu(c) == 0 and _d(c) > 0 and not c.zero("R")),
    PartitionRow("M12", 3, "r2 r1", lambda c: _mu(c) == 0 and _d(c) == 0 and not c.zero("R") and not c.zero("P")),
    PartitionRow("M13", 3, "r3", lambda c: _mu(c) == 0 and _d(c) == 0 and not c.zero("R") and c.zero("P")),
    PartitionRow("M14", 2, "r1 r1", lambda c: _mu(c) == 0 and c.zero("R") and not c.zero("P") and c.sgn("U") > 0, "U"),
    PartitionRow("M15", 2, "c1 c1", lambda c: _mu(c) == 0 and c.zero("R") and not c.zero("P") and c.sgn("U") < 0, "U"),
    PartitionRow("M16", 2, "r2", lambda c: _mu(c) == 0 and c.zero("R") and not c.zero("P") and c.zero("U")),
    PartitionRow("M17", 1, "r1", lambda c: _mu(c) == 0 and c.zero("R") and c.zero("P") and not c.zero("U")),
    PartitionRow("M18", 0, "", lambda c: _mu(c) == 0 and c.zero("R") and c.zero("P") and c.zero("U") and not c.zero("V")),
    PartitionRow("M19", MF_INFINITE, "", lambda c: _mu(c) == 0 and c.zero("R") and c.zero("P") and c.zero("U") and c.zero("V")),
)

PARTITION_BY_INDEX = {row.set_index: row for row in PARTITION}


def _context(sys, inv=None):
    return _PartitionContext(inv or AffineInvariants(sys))


def partition_matches(sys, inv=None):
    """Every partition row whose conditions hold for sys (a partition, so exactly one)"""
    ctx = _context(sys, inv)
    return [row.set_index for row in PARTITION if row.matches(ctx)]


def _classify(ctx):
    matched = [row for row in PARTITION if row.matches(ctx)]
    if len(matched) != 1:
        names = ", ".join(row.set_index for row in matched) or "none"
        raise ClassificationError(f"expected exactly one partition row to match, matched: {names}")
    row = matched[0]
    transcript = ctx.transcript(row.sign_group) if row.sign_group else SignTranscript()
    return row, transcript


def classify_mf(sys, inv=None):
    """(m_f, multiplicity pattern, set index, sign transcript) for the finite singular points"""
    row, transcript = _classify(_context(sys, inv))
    return row.m_f, row.pattern, row.set_index, transcript


# -- centers at the origin ----------------------------------------------------

def _banded_zero(value, low, high):
    magnitude = abs(value)
    if magnitude <= low:
        return True
    if magnitude >= high:
        return False
    return None


def _all(*values):
    if any(v is False for v in values):
        return False
    if any(v is None for v in values):
        return None
    return True


def _any(*values):
    if any(v is True for v in values):
        return True
    if any(v is None for v in values):
        return None
    return False


def origin_center_test(values, low=None, high=None):
    """Center conditions on I1..I13 values; True, False, or None when a band hides a zero test

    Exact values are compared exactly; with low/high the zero tests become
    |v| <= low (zero), |v| >= high (nonzero) and undecided in between."""
    if low is None:
        is_zero = lambda v: v == 0
        negative = lambda v: v < 0
    else:
        is_zero = lambda v: _banded_zero(v, low, high)
        negative = lambda v: True if v <= -high else (False if v >= -low else None)
    i3, i4, i5 = values["I3"], values["I4"], values["I5"]
    return _all(
        is_zero(values["I1"]),
        is_zero(values["I6"]),
        negative(values["I2"]),
        _any(is_zero(i3),
             is_zero(values["I13"]),
             _all(is_zero(5 * i3 - 2 * i4), is_zero(13 * i3 - 10 * i5))),
    )


CENTER_INVARIANTS = ("I1", "I2", "I3", "I4", "I5", "I6", "I13")


def center_at_origin(sys, inv=None):
    """Whether the singular point at the origin is a center"""
    if sys.p00 != 0 or sys.q00 != 0:
        raise PreconditionError(f"the origin is not a singular point of {sys}")
    inv = inv or AffineInvariants(sys)
    return bool(origin_center_test({name: inv.I(name) for name in CENTER_INVARIANTS}))


# -- center count -------------------------------------------------------------

@dataclass
class ClassificationReport:
    m_f: object
    pattern: str
    set_index: str
    center_count: object
    fired_rule: str
    transcript: SignTranscript = field(default_factory=SignTranscript)
    diagnostics: list = field(default_factory=list)
    conditions: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "m_f": self.m_f,
            "pattern": self.pattern,
            "set_index": self.set_index,
            "center_count": self.center_count,
            "fired_rule": self.fired_rule,
            "transcript": self.transcript.to_dict(),
            "diagnostics": list(self.diagnostics),
            "conditions": {k: str(v) for k, v in self.conditions.items()},
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            m_f=data["m_f"],
            pattern=data["pattern"],
            set_index=data["set_index"],
            center_count=data["center_count"],
            fired_rule=data["fired_rule"],
            transcript=SignTranscript.from_dict(data.get("transcript", {})),
            diagnostics=list(data.get("diagnostics", [])),
            conditions={k: Fraction(v) for k, v in data.get("conditions", {}).items()},
        )


def _c(inv):
    return lambda i: inv.C(i)


def single_point(sys):
    """The only finite singular point of a system with m_f = 1, exactly

    Being the only one, the point is fixed by conjugation, so it is rational and the
    lex Groebner basis of {P, Q} is {x - x0, y - y0}."""
    x, y = sp.symbols("x y")
    p, q = (sum(sp.Rational(c.numerator, c.denominator) * x ** i * y ** j for c, (i, j) in
                zip(coeffs, ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))))
            for coeffs in (sys.p_coefficients(), sys.q_coefficients()))
    basis = sp.groebner([p, q], x, y, order="lex")
    point = {}
    for g in basis.exprs:
        poly = sp.Poly(g, x, y)
        if poly.total_degree() != 1 or len(poly.free_symbols) != 1:
            break
        (var,) = poly.free_symbols
        point[var] = sp.Rational(-poly.coeff_monomial(1), poly.coeff_monomial(var))
    if len(basis.exprs) != 2 or set(point) != {x, y}:
        raise ClassificationError(f"expected one simple finite singular point, Groebner basis is {basis.exprs}")
    return tuple(Fraction(int(point[v].p), int(point[v].q)) for v in (x, y))


def _at_single_point(sys, inv):
    """Invariants of sys with its only finite singular point moved to the origin"""
    point = single_point(sys)
    if point == (0, 0):
        return inv
    return AffineInvariants(sys.translate(*point))


def _thm9_linear_part(inv):
    at_point = _at_single_point(inv.sys, inv)
    return at_point.I("J2") == 0 and at_point.J1 > 0


def _lemma1(C):
    return lambda: C(1) == 0 and C(3) == 0


def _theorem_branches(inv):
    """Statements of the center theorems as (rule, centers, predicate), checked in order"""
    C = _c(inv)
    lemma1 = _lemma1(C)
    mu = inv.mu
    return {
        "M1": ("Thm1", [
            ("Thm1(i)", 1, lambda: C(2) * C(4) < 0 and lemma1() and C(5) == 0),
            ("Thm1(ii)", 1, lambda: C(4) == 0 and lemma1() and mu < 0),
            ("Thm1(iii)", 2, lambda: C(4) == 0 and lemma1() and C(9) >= 0 and mu > 0),
        ]),
        "M2": ("Thm2", [
            ("Thm2(i)", 1, lambda: C(2) * C(4) < 0 and lemma1() and C(5) * (C(6) ** 2 + C(7) ** 2) == 0),
            ("Thm2(ii)", 1, lambda: C(4) == 0 and C(12) <= 0 and lemma1() and mu > 0),
            ("Thm2(iii)", 2, lambda: C(4) == 0 and C(12) < 0 and lemma1() and mu < 0 and C(9) > 0),
        ]),
        "M4": ("Thm3", [
            ("Thm3(i)", 1, lambda: C(2) * C(4) < 0 and lemma1() and C(5) == 0),
            ("Thm3(ii)", 1, lambda: C(4) == 0 and mu > 0 and lemma1() and C(8) == 0),
        ]),
        "M8": ("Thm4", [
            ("Thm4", 1, lambda: C(3) == 0 and C(4) == 0 and (C(9) > 0 or (C(9) == 0 and mu > 0))),
        ]),
        "M10": ("Thm5", [
            ("Thm5(i)", 1, lambda: C(2) * C(4) < 0 and lemma1() and C(5) == 0),
            ("Thm5(ii)", 1, lambda: C(4) == 0 and lemma1() and C(10) == 0 and C(11) <= 0),
        ]),
        "M11": ("Thm6", [
            ("Thm6", 1, lambda: C(3) == 0 and C(9) == 0 and C(10) == 0 and C(11) < 0),
        ]),
        "M14": ("Thm8", [
            ("Thm8(i)", 1, lambda: C(2) * C(4) < 0 and lemma1() and C(5) == 0),
            ("Thm8(ii)", 1, lambda: lemma1() and C(4) == 0 and C(8) > 0),
            ("Thm8(iii)", 1, lambda: inv.Stilde.is_zero() and inv.I("K1").is_zero() and inv.I("I1") == 0),
            ("Thm8(iv)", 2, lambda: lemma1() and C(4) == 0 and C(8) < 0 and C(9) > 0),
        ]),
        "M17": ("Thm9", [
            ("Thm9(i)", 1, lambda: not inv.Ntilde.is_zero() and C(3) == 0 and C(10) == 0 and C(11) < 0),
            ("Thm9(ii)", 1, lambda: inv.Ntilde.is_zero() and _thm9_linear_part(inv)),
        ]),
    }


NO_REAL_POINTS = ("M3", "M7", "M15")
NO_SIMPLE_REAL_POINT = ("M5", "M6", "M9", "M13", "M16")


def count_centers(sys, inv=None):
    """Classify sys into M1..M19 and decide how many of its singular points are centers"""
    inv = inv or AffineInvariants(sys)
    ctx = _context(sys, inv)
    row, transcript = _classify(ctx)
    report = ClassificationReport(row.m_f, row.pattern, row.set_index, 0, "", transcript)
    if not transcript.consistent:
        report.diagnostics.append(f"sign evaluation not point-independent: {transcript.diagnostics}")

    index = row.set_index
    if index == "M19":
        report.center_count = NOT_APPLICABLE
        report.fired_rule = "M19-degenerate"
        if sys.has_zero_quadratic_part():
            report.diagnostics.append("degenerate system: zero quadratic part, the system is linear")
        else:
            report.diagnostics.append("degenerate system: infinitely many finite singular points")
        return report
    if index == "M12":
        report.fired_rule = "Thm7"
    elif index in NO_REAL_POINTS:
        report.fired_rule = f"{index}-no-real-points"
    elif index in NO_SIMPLE_REAL_POINT:
        report.fired_rule = f"{index}-no-simple-real-point"
    elif index == "M18":
        report.fired_rule = "M18-no-finite-points"
    else:
        theorem, branches = _theorem_branches(inv)[index]
        for rule, centers, predicate in branches:
            if predicate():
                report.center_count, report.fired_rule = centers, rule
                break
        else:
            veto = inv.C(1) != 0 or inv.C(3) != 0
            report.fired_rule = "Lemma1-veto" if veto else f"{theorem}-none"

    report.conditions = inv.evaluated_c()
    if report.center_count > 2:
        raise ClassificationError(f"{index} reports {report.center_count} centers, at most two are possible")
    return report
