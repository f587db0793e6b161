# File: comitants.py
# Description: Every named comitant of a quadratic system, from the epsilon contractions up to P, R, S, T, U

from fractions import Fraction
from functools import cached_property

from forms import ContractionExpr, contract, transvectant

# Index letters stand for the Greek ones of the usual notation: a, b, c, d for alpha, beta, gamma, kappa.
_B_TAIL = "a^l_r a^k_pb a^m_qs a^g_vc x^a x^b x^c e_kl e_mn e_gh e^pq e^rs e^uv"
_D_TAIL = "a^u_bd x^q x^s x^v e_pq e_rs e_uv e^ab e^cd"
_F_TAIL = "a^l_qa x^a x^b e_kl e_mn e^pq e^rs"

HAT_EXPRESSIONS = {
    "Ahat": ContractionExpr.parse("a^p_k a^q_am a^a_ln e_pq e^kl e^mn"),
    "Bhat": ContractionExpr.parse(f"2 a^n a^h_ua {_B_TAIL} - a^n_u a^h_a {_B_TAIL}"),
    "Chat": ContractionExpr.parse("a^p_ab x^q x^a x^b e_pq"),
    "Dhat": ContractionExpr.parse(f"2 a^p a^r_ac {_D_TAIL} - a^p_a a^r_c {_D_TAIL}"),
    "Ehat": ContractionExpr.parse("a^p_k a^q_am a^r_ln x^s x^a e_pq e_rs e^kl e^mn"),
    "Fhat": ContractionExpr.parse(
        f"a^m_s a^n_b a^k_pr {_F_TAIL} - 2 a^k_r a^n_b a^m_ps {_F_TAIL}"
        f" + a^k_p a^m_r a^n_sb {_F_TAIL} - 4 a^m a^k_pr a^n_sb {_F_TAIL}"),
    "Ghat": ContractionExpr.parse("a^a_ab x^b"),
    "Hhat": ContractionExpr.parse("1/2 a^p_ra a^q_sb x^a x^b e_pq e^rs"),
    "Khat": ContractionExpr.parse("1/2 a^p_mu a^r_nv x^q x^s e_pq e_rs e^mn e^uv"),
}

B1_EXPRESSION = ContractionExpr.parse("x^a a^b_q a^c_pa e_bc e^pq")

HAT_DEGREES = {"Ahat": 0, "Bhat": 3, "Chat": 3, "Dhat": 3, "Ehat": 2,
               "Fhat": 2, "Ghat": 1, "Hhat": 2, "Khat": 2}

DEGREES = {"B1": 1, "B2": 1, "B3": 2, "B4": 2, "B5": 3,
           "H": 1, "G": 2, "F": 3, "V": 4, "Stilde": 2, "Ntilde": 2, "K1": 1,
           "P": 4, "R": 2, "S": 4, "T": 6, "U": 6}

CLS_NAMES = ("J1", "B1", "B2", "B3", "B4", "B5")
DERIVED_NAMES = ("mu1", "H1", "G1", "G2", "G3", "D1", "mu", "D",
                 "H", "G", "F", "V", "Stilde", "Ntilde", "K1", "P", "R", "S", "T", "U")


class ComitantSet:
    """Lazily evaluated comitants of one system; each is computed at most once"""

    def __init__(self, sys):
        self.sys = sys

    def _check(self, name, form):
        expected = HAT_DEGREES.get(name, DEGREES.get(name))
        assert expected is None or form.degree == expected, f"{name} has degree {form.degree}"
        return form

    # -- contractions -----------------------------------------------------------

    def _hat(self, name):
        return self._check(name, contract(HAT_EXPRESSIONS[name], self.sys))

    @cached_property
    def Ahat(self):
        return self._hat("Ahat")

    @cached_property
    def Bhat(self):
        return self._hat("Bhat")

    @cached_property
    def Chat(self):
        return self._hat("Chat")

    @cached_property
    def Dhat(self):
        return self._hat("Dhat")

    @cached_property
    def Ehat(self):
        return self._hat("Ehat")

    @cached_property
    def Fhat(self):
        return self._hat("Fhat")

    @cached_property
    def Ghat(self):
        return self._hat("Ghat")

    @cached_property
    def Hhat(self):
        return self._hat("Hhat")

    @cached_property
    def Khat(self):
        return self._hat("Khat")

    # -- comitants read off the right-hand sides ------------------------------------

    def _part(self, j, degree):
        return self.sys.homogeneous_part(j, degree)

    @cached_property
    def J1(self):
        return self.sys.linear_determinant()

    @cached_property
    def B1(self):
        # The contraction, not its determinant rendering (which differs by a factor -1/2).
        return self._check("B1", contract(B1_EXPRESSION, self.sys))

    @cached_property
    def B2(self):
        return self._check("B2", self._part(1, 0) * self._part(2, 1) - self._part(2, 0) * self._part(1, 1))

    @cached_property
    def B3(self):
        p2, q2 = self._part(1, 2), self._part(2, 2)
        det = p2.derivative(1, 0) * q2.derivative(0, 1) - p2.derivative(0, 1) * q2.derivative(1, 0)
        return self._check("B3", det.scale(Fraction(1, 4)))

    @cached_property
    def B4(self):
        return self._check("B4", self._part(1, 0) * self._part(2, 2) - self._part(2, 0) * self._part(1, 2))

    @cached_property
    def B5(self):
        return self._check("B5", self._part(1, 1) * self._part(2, 2) - self._part(2, 1) * self._part(1, 2))

    # -- transvectant chain -------------------------------------------------------

    @cached_property
    def mu1(self):
        return transvectant(self.B3, self.B3, 2)

    @cached_property
    def H1(self):
        return transvectant(self.B3, self.B1, 1)

    @cached_property
    def G1(self):
        return transvectant(self.B1, self.B5, 1)

    @cached_property
    def G2(self):
        return transvectant(self.B5, self.B5, 2)

    @cached_property
    def G3(self):
        return transvectant(self.B3, self.B4, 1)

    @cached_property
    def D1(self):
        d = self.Dhat
        return transvectant(transvectant(transvectant(d, d, 2), d, 1), d, 3)

    # -- named comitants ----------------------------------------------------------

    @cached_property
    def mu(self):
        return -2 * self.mu1.scalar()

    @cached_property
    def D(self):
        return -self.D1.scalar()

    @cached_property
    def H(self):
        return self._check("H", self.H1.scale(2))

    @cached_property
    def G(self):
        two_g = self.G1.scale(4) - self.G2.scale(3) + self.G3.scale(8)
        return self._check("G", two_g.scale(Fraction(1, 2)))

    @cached_property
    def F(self):
        f = self.B5.scale(self.J1) + (self.B1 * self.B4).scale(2) + (self.B2 * self.B3).scale(4)
        return self._check("F", f)

    @cached_property
    def V(self):
        return self._check("V", self.B4 * self.B4 - self.B2 * self.B5)

    @cached_property
    def Stilde(self):
        return self.B3

    @cached_property
    def Ntilde(self):
        return self.Khat

    @cached_property
    def K1(self):
        return self.Ghat

    @cached_property
    def P(self):
        mu, G, F, H, V = self.mu, self.G, self.F, self.H, self.V
        return self._check("P", G * G - (F * H).scale(6) + V.scale(12 * mu))

    @cached_property
    def R(self):
        return self._check("R", ((self.H * self.H).scale(3) - self.G.scale(2 * self.mu)).scale(4))

    @cached_property
    def S(self):
        return self._check("S", self.R * self.R - self.P.scale(16 * self.mu ** 2))

    @cached_property
    def T(self):
        mu, G, F, H, V = self.mu, self.G, self.F, self.H, self.V
        bracket = ((G ** 3).scale(2)
                   + ((F * F).scale(3) - (G * V).scale(8)).scale(9 * mu)
                   - (F * G * H).scale(18)
                   + (H * H * V).scale(108))
        return self._check("T", bracket.scale(2 * mu) - self.P * self.R)

    @cached_property
    def U(self):
        return self._check("U", self.F * self.F - (self.G * self.V).scale(4))

    def as_dict(self, names):
        return {name: getattr(self, name) for name in names}


def hat_comitants(sys):
    return ComitantSet(sys).as_dict(HAT_DEGREES)


def cls_comitants(sys):
    return ComitantSet(sys).as_dict(CLS_NAMES)


def derived_comitants(sys):
    return ComitantSet(sys).as_dict(DERIVED_NAMES)
