"""Pairs of binary quadratic forms made square simultaneously."""
from fractions import Fraction

from ..curve import CurveQ
from ..exactnum import primitive_integers
from ..isogeny import compose, isogeny2, isogeny4, match_model
from .base import Family, FamilyMeta, Rejection, register, sqrt_or_none


def _form(F, x, y):
    A, B, C, K = F
    return (A * x * x + B * x * y + C * y * y) / K


class _TwoQuadric(Family):
    """Forms F = (A, B, C, K) meaning A x^2 + B x y + C y^2 = K z^2."""

    fields = ("x", "y", "z", "w")
    homogeneous = True

    def forms(self, p):
        raise NotImplementedError

    def ratios(self, p, P):
        """Candidate values of y/x from the point P."""
        raise NotImplementedError

    def candidates(self, p, P):
        if P is None:
            return Rejection("torsion-trivial", "point at infinity")
        ts = self.ratios(p, P)
        if isinstance(ts, Rejection):
            return ts
        F1, F2 = self.forms(p)
        out = []
        for t in ts:
            if t is None:
                continue
            x, y = primitive_integers((1, t)) if t != 0 else (1, 0)
            z, w = sqrt_or_none(_form(F1, x, y)), sqrt_or_none(_form(F2, x, y))
            if z is not None and w is not None:
                out.append((Fraction(x), Fraction(y), z, w))
        if not out and ts and all(t in (0, None) for t in ts):
            return Rejection("torsion-trivial", "y = 0 or undefined")
        return out

    def verify(self, p, sol):
        x, y, z, w = sol
        F1, F2 = self.forms(p)
        return y != 0 and x != 0 and _form(F1, x, y) == z * z and _form(F2, x, y) == w * w

    def normalize(self, sol):
        x, y, z, w = primitive_integers(sol)
        if x + y < 0 or (x + y == 0 and x < 0):
            x, y = -x, -y
        return tuple(Fraction(v) for v in (x, y, abs(z), abs(w)))

    def extra_variants(self, sol, p):
        x, y, z, w = sol
        if p is None:
            return []
        (A1, B1, C1, K1), (A2, B2, C2, K2) = self.forms(p)
        out = []
        if B1 == 0 and B2 == 0:
            out.append((x, -y, z, w))
        if (A1, B1, C1, K1) == (A2, -B2, C2, K2):
            out.append((x, -y, w, z))
        if (A1, B1, C1, K1) == (C2, B2, A2, K2):
            out.append((y, x, w, z))
            if B1 == 0 and B2 == 0:
                out.append((y, -x, w, z))
        return out

    def isogenies(self, p):
        E = self.curve(p)
        return [isogeny2(E)] if E.a6 == 0 else []


def _m_ratio(v, u, alpha, beta, gamma, delta, e, f):
    """m = (v + alpha u + beta)/(gamma u + delta), then y/x = (e - 2m)/(m^2 - f)."""
    den = gamma * u + delta
    if den == 0:
        return None
    m = (v + alpha * u + beta) / den
    if m * m == f:
        return None
    return (e - 2 * m) / (m * m - f)


@register
class Concordant(_TwoQuadric):
    name = "concordant"
    params = ("M", "N")
    description = "x^2 + M y^2 = z^2 and x^2 + N y^2 = w^2"
    meta = FamilyMeta("Z/2+Z/2", "M = N or M N = 0")

    def singular(self, p):
        if p["M"] == p["N"] or p["M"] * p["N"] == 0:
            return "M = N or M N = 0 gives a singular curve"

    def forms(self, p):
        return (1, 0, p["M"], 1), (1, 0, p["N"], 1)

    def curve(self, p):
        M, N = p["M"], p["N"]
        return CurveQ(M + N, M * N, 0)

    def ratios(self, p, P):
        M, N = p["M"], p["N"]
        H, G = P
        den = M * N - H * H
        if den == 0 or G == 0:
            return Rejection("torsion-trivial", "y/x is 0 or undefined")
        return [2 * G / den]


@register
class ConcordantRecip(_TwoQuadric):
    name = "concordant_recip"
    description = "x^2 + N y^2 = z^2 and x^2 + y^2 / N = w^2"
    meta = FamilyMeta("Z/2+Z/2", "N in {0, 1, -1}")

    def singular(self, p):
        if p["N"] in (0, 1, -1):
            return "N in {0, +-1} gives a singular curve"

    def forms(self, p):
        N = p["N"]
        return (1, 0, N, 1), (N, 0, 1, N)

    def curve(self, p):
        N = p["N"]
        return CurveQ(N + N**3, N**4, 0)

    def ratios(self, p, P):
        N = p["N"]
        U, V = P
        den = N**4 - U * U
        if den == 0 or V == 0:
            return Rejection("torsion-trivial", "y/x is 0 or undefined")
        return [2 * N * V / den]

    def isogenies(self, p):
        N = p["N"]
        E = self.curve(p)
        return [match_model(isogeny2(E), CurveQ(-2 * (N + N**3), N * N * (1 - N * N) ** 2, 0))]


@register
class LucasGerono(_TwoQuadric):
    name = "lucas_gerono"
    description = "x^2 + N y^2 = (N+1) z^2 and x^2 + (N+1) y^2 = (N+2) w^2"
    meta = FamilyMeta("Z/2+Z/2", "N in {0, -1, -2}")

    def singular(self, p):
        if p["N"] in (0, -1, -2):
            return "N in {0, -1, -2} gives a singular curve"

    def forms(self, p):
        N = p["N"]
        return (1, 0, N, N + 1), (1, 0, N + 1, N + 2)

    def curve(self, p):
        N = p["N"]
        K = N * N + 3 * N + 2
        return CurveQ(K - N * K, -N * K * K, 0)

    def ratios(self, p, P):
        N = p["N"]
        H, G = P
        den = (H + N + 1) * (N + 1) * (N + 2)
        if den == 0:
            return Rejection("pole", "H = -(N+1)")
        k = (G + (N + 1) ** 2 * H) / den
        d = k * k * (N + 1) - N
        if d == 0:
            return Rejection("pole", "k^2 (N+1) = N")
        return [(k * k * (N + 1) - 2 * k * (N + 1) + N) / d]

    def accept(self, p, P, sol):
        return "trivial" if abs(sol[0]) == abs(sol[1]) else None

    def parametric(self, k):
        N = Fraction(k)
        y = N**4 + 2 * N**3 - 5 * N * N - 14 * N - 7
        x = 3 * N**4 + 14 * N**3 + 21 * N * N + 10 * N - 1
        F1, F2 = self.forms({"N": N})
        return {"N": N}, (x, y, sqrt_or_none(_form(F1, x, y)), sqrt_or_none(_form(F2, x, y)))


@register
class TwoQuadrics(_TwoQuadric):
    name = "two_quadrics"
    params = ("e", "f", "g", "h")
    description = "x^2 + e x y + f y^2 = z^2 and x^2 + g x y + h y^2 = w^2"
    meta = FamilyMeta("Z/2", "e^2 = 4f, g^2 = 4h or (f-h)^2 + (e-g)(eh-fg) = 0")

    def singular(self, p):
        e, f, g, h = p["e"], p["f"], p["g"], p["h"]
        if e * e == 4 * f or g * g == 4 * h:
            return "a form is a perfect square"
        if (f - h) ** 2 + (e - g) * (e * h - f * g) == 0:
            return "(f-h)^2 + (e-g)(eh-fg) = 0 gives a singular curve"

    def forms(self, p):
        return (1, p["e"], p["f"], 1), (1, p["g"], p["h"], 1)

    def curve(self, p):
        e, f, g, h = p["e"], p["f"], p["g"], p["h"]
        return CurveQ(2 * (2 * (f + h) - e * g), (e * e - 4 * f) * (g * g - 4 * h), 0)

    def ratios(self, p, P):
        return [_general_ratio(p, (P[0], s)) for s in (P[1], -P[1])]

    def parametric(self, k):
        e, f, g, h = (Fraction(v) for v in k)
        p = {"e": e, "f": f, "g": g, "h": h}
        x = (e**4 - 4 * g * e**3 - 2 * (4 * f - 3 * g * g + 4 * h) * e * e
             + 4 * g * (4 * f - g * g + 4 * h) * e + 16 * f * f - 8 * f * (g * g + 4 * h) + (g * g - 4 * h) ** 2)
        y = 8 * (e - g) * (e * e - 4 * f - g * g + 4 * h)
        F1, F2 = self.forms(p)
        return p, (x, y, sqrt_or_none(_form(F1, x, y)), sqrt_or_none(_form(F2, x, y)))


def _general_ratio(p, P):
    e, f, g, h = p["e"], p["f"], p["g"], p["h"]
    u, v = P
    den = 2 * (g * g - 4 * h - u)
    if den == 0:
        return None
    m = (e * (g * g - 4 * h) - g * u - v) / den
    if m * m == f:
        return None
    return (e - 2 * m) / (m * m - f)


def infinite_order_test(e, f, g, h):
    """(P, u(2P), verdict) for P = (g^2 - 4h, (e-g)(g^2-4h)) on the two-quadric curve.

    verdict is "degenerate" when e = g or e^2 - 4f = g^2 - 4h, "infinite" when u(2P)
    is not an integer (Nagell-Lutz on the integral model), else "undecided".
    """
    e, f, g, h = (Fraction(v) for v in (e, f, g, h))
    E = TwoQuadrics().curve({"e": e, "f": f, "g": g, "h": h})
    P = (g * g - 4 * h, (e - g) * (g * g - 4 * h))
    if e == g or e * e - 4 * f == g * g - 4 * h:
        return P, None, "degenerate"
    P2 = E.double(P)
    u2 = P2[0]
    return P, u2, "infinite" if u2.denominator != 1 else "undecided"


class _MapFamily(_TwoQuadric):
    """Pairs whose curve map is m = (v + alpha u + beta)/(gamma u + delta)."""

    def mcoeffs(self, p):
        raise NotImplementedError

    def ratios(self, p, P):
        u, v = P
        (A, e, f, K), _ = self.forms(p)
        alpha, beta, gamma, delta = self.mcoeffs(p)
        return [_m_ratio(s, u, alpha, beta, gamma, delta, e, f) for s in (v, -v)]


@register
class DD100(_MapFamily):
    name = "dd100"
    description = "x^2 + x y + y^2 and x^2 + x y + N y^2 both square"
    meta = FamilyMeta("Z/2+Z/2", "N in {1, 1/4}")

    def singular(self, p):
        if p["N"] in (1, Fraction(1, 4)):
            return "N in {1, 1/4} gives a singular curve"

    def forms(self, p):
        return (1, 1, 1, 1), (1, 1, p["N"], 1)

    def curve(self, p):
        N = p["N"]
        return CurveQ(2 * (2 * N + 1), 12 * N - 3, 0)

    def mcoeffs(self, p):
        N = p["N"]
        return 1, 4 * N - 1, 2, 2 * (4 * N - 1)

    def parametric(self, k):
        k = Fraction(k)
        N = 3 * k * k - 2
        x, y = k * k + 2 * k - 3, -4 * k
        return {"N": N}, (x, y, k * k + 3, abs(7 * k * k - 3))


@register
class DD110(_MapFamily):
    name = "dd110"
    description = "x^2 + x y + N y^2 and x^2 + x y - N y^2 both square"
    meta = FamilyMeta("Z/2+Z/2", "N in {0, 1/4, -1/4}")

    def singular(self, p):
        if p["N"] == 0 or 16 * p["N"] ** 2 == 1:
            return "N in {0, +-1/4} gives a singular curve"

    def forms(self, p):
        return (1, 1, p["N"], 1), (1, 1, -p["N"], 1)

    def curve(self, p):
        return CurveQ(-2, 1 - 16 * p["N"] ** 2, 0)

    def mcoeffs(self, p):
        N = p["N"]
        return 1, -(1 + 4 * N), 2, -2 * (1 + 4 * N)

    def parametric(self, k):
        k = Fraction(k)
        N = 6 * k * k + 6 * k + 2
        return {"N": N}, (5 * k * k + 6 * k + 2, -(2 * k + 1), 7 * k * k + 7 * k + 2, abs(k * k + k))


@register
class DD10(_MapFamily):
    name = "dd10"
    description = "x^2 + x y + N y^2 and x^2 - x y + N y^2 both square"
    meta = FamilyMeta("Z/4", "N in {0, 1/4}")

    def singular(self, p):
        if p["N"] in (0, Fraction(1, 4)):
            return "N in {0, 1/4} gives a singular curve"

    def forms(self, p):
        return (1, 1, p["N"], 1), (1, -1, p["N"], 1)

    def curve(self, p):
        N = p["N"]
        return CurveQ(2 * (4 * N + 1), (4 * N - 1) ** 2, 0)

    def mcoeffs(self, p):
        N = p["N"]
        return -1, 4 * N - 1, 2, 2 * (4 * N - 1)


@register
class DD50(_MapFamily):
    name = "dd50"
    description = "x^2 + N x y = z^2 and x^2 + N x y + y^2 = w^2"
    meta = FamilyMeta("Z/2+Z/4", "N in {0, 2, -2}")

    def singular(self, p):
        if p["N"] in (0, 2, -2):
            return "N in {0, +-2} gives a singular curve"

    def forms(self, p):
        return (1, p["N"], 0, 1), (1, p["N"], 1, 1)

    def curve(self, p):
        N = p["N"]
        return CurveQ(4 - 2 * N * N, N * N * (N * N - 4), 0)

    def mcoeffs(self, p):
        N = p["N"]
        return N, -N * (N * N - 4), 2, 2 * (4 - N * N)

    def verify(self, p, sol):
        return super().verify(p, sol) and sol[2] != 0 and sol[3] != 0


@register
class DD3(_MapFamily):
    name = "dd3"
    description = "x^2 + N x y + y^2 and x^2 - N x y + y^2 both square"
    meta = FamilyMeta("Z/2+Z/4", "N in {0, 2, -2}")

    def singular(self, p):
        if p["N"] in (0, 2, -2):
            return "N in {0, +-2} gives a singular curve"

    def forms(self, p):
        return (1, p["N"], 1, 1), (1, -p["N"], 1, 1)

    def curve(self, p):
        N = p["N"]
        return CurveQ(2 * (N * N + 4), (N * N - 4) ** 2, 0)

    def mcoeffs(self, p):
        N = p["N"]
        return -N, N * (4 - N * N), 2, 2 * (4 - N * N)


@register
class DD120(_MapFamily):
    name = "dd120"
    description = "x^2 + N x y + y^2 and x^2 + N x y - y^2 both square"
    meta = FamilyMeta("Z/2+Z/2", "N in {2, -2}")

    def singular(self, p):
        if p["N"] in (2, -2):
            return "N = +-2 gives a singular curve"

    def forms(self, p):
        return (1, p["N"], 1, 1), (1, p["N"], -1, 1)

    def curve(self, p):
        N = p["N"]
        return CurveQ(N * N + 12, 8 * (N * N + 4), 0)

    def mcoeffs(self, p):
        return p["N"], 0, 2, 0

    def isogenies(self, p):
        N = p["N"]
        E = self.curve(p)
        return [match_model(isogeny2(E), CurveQ(-2 * (N * N + 12), (N * N - 4) ** 2, 0))]


@register
class DD20(_MapFamily):
    name = "dd20"
    description = "x^2 + N x y + (N+1) y^2 and x^2 + N x y + (N-1) y^2 both square"
    meta = FamilyMeta("Z/2+Z/2", "N = 2 or N^2 - 4N - 4 = 0")

    def singular(self, p):
        N = p["N"]
        if N == 2 or N * N - 4 * N - 4 == 0:
            return "N = 2 gives a singular curve"

    def forms(self, p):
        N = p["N"]
        return (1, N, N + 1, 1), (1, N, N - 1, 1)

    def curve(self, p):
        N = p["N"]
        return CurveQ(N * N - 4 * N + 12, 8 * (N - 2) ** 2, 0)

    def mcoeffs(self, p):
        return p["N"], 0, 2, 0

    def isogenies(self, p):
        N = p["N"]
        E = self.curve(p)
        return [match_model(isogeny2(E), CurveQ(-2 * (N * N - 4 * N + 12), (N * N - 4 * N - 4) ** 2, 0))]


@register
class DD60(_MapFamily):
    name = "dd60"
    description = "x^2 + 2N x y + N y^2 and x^2 - 2N x y + N y^2 both square"
    meta = FamilyMeta("Z/4", "N in {0, 1}", "Z/2+Z/4 when N is a square")

    def singular(self, p):
        if p["N"] in (0, 1):
            return "N in {0, 1} gives a singular curve"

    def forms(self, p):
        N = p["N"]
        return (1, 2 * N, N, 1), (1, -2 * N, N, 1)

    def curve(self, p):
        N = p["N"]
        return CurveQ(2 * N * (N + 1), N * N * (N - 1) ** 2, 0)

    def mcoeffs(self, p):
        N = p["N"]
        return -N, -N * N * (N - 1), 1, -N * (N - 1)

    def isogenies(self, p):
        N = p["N"]
        E = self.curve(p)
        four = match_model(isogeny4(E, 2 * N, -N * (N - 1)), CurveQ(2 * N * (1 - 2 * N), N * N, 0))
        return [isogeny2(E), four]

    def parametric(self, k):
        k = Fraction(k)
        N = 4 - k * k
        return {"N": N}, (k * (k * k - 2), Fraction(2), abs(k**3 - 2 * k * k - 4 * k + 4), abs(k**3 + 2 * k * k - 4 * k - 4))


@register
class DD40(_TwoQuadric):
    name = "dd40"
    description = "x^2 + N x y = z^2 and y^2 - N x y = w^2 with z w != 0"
    meta = FamilyMeta("Z/4", "N = 0")

    def singular(self, p):
        if p["N"] == 0 or p["N"] ** 2 == -1:
            return "N = 0 gives a singular curve"

    def forms(self, p):
        N = p["N"]
        return (1, N, 0, 1), (0, -N, 1, 1)

    def curve(self, p):
        N = p["N"]
        return CurveQ(2 * (N * N + 2), N**4, 0)

    def ratios(self, p, P):
        N = p["N"]
        h = P[0]
        if h == 0 or h + N * N == 0:
            return Rejection("torsion-trivial", "y/x is 0 or undefined")
        return [-4 * N * h / (h + N * N) ** 2]

    def verify(self, p, sol):
        return super().verify(p, sol) and sol[2] != 0 and sol[3] != 0

    def isogenies(self, p):
        N = p["N"]
        E = self.curve(p)
        first = match_model(isogeny4(E, 2, N * N), CurveQ(8 * (N * N - 1), 16 * (N * N + 1) ** 2, 0))
        second = match_model(isogeny4(first.target, 4 * N, -4 * (N * N + 1)), CurveQ(-32 * (2 * N * N + 1), 256, 0))
        return [isogeny2(E), first, compose(first, second)]


@register
class LeechVariant(_TwoQuadric):
    name = "leech_variant"
    description = "x^2 + (N-1) y^2 = N z^2 and (N-1) x^2 + y^2 = N w^2 with |x| != |y|"
    meta = FamilyMeta("Z/2+Z/4", "N in {0, 1, 2}")

    def singular(self, p):
        if p["N"] in (0, 1, 2):
            return "N in {0, 1, 2} gives a singular curve"

    def forms(self, p):
        N = p["N"]
        return (1, 0, N - 1, N), (N - 1, 0, 1, N)

    def curve(self, p):
        n = p["N"] - 1
        return CurveQ(n * n + 1, n * n, 0)

    def ratios(self, p, P):
        N = p["N"]
        u, v = P
        out = []
        for s in (v, -v):
            den = N * (u + N - 1)
            if den == 0:
                continue
            m = (s + u + (N - 1) ** 2) / den
            d = N * (m * m - 1) + 1
            out.append(None if d == 0 else (N * (m - 1) ** 2 - 1) / d)
        return out

    def accept(self, p, P, sol):
        return "trivial" if abs(sol[0]) == abs(sol[1]) else None


@register
class Piezas(_TwoQuadric):
    name = "piezas"
    params = ("M",)
    fields = ("a", "b", "c", "d")
    description = "a^2 + M^2 b^2 = c^2 and M^2 a^2 + b^2 = d^2"
    meta = FamilyMeta("Z/2+Z/4", "M^2 in {0, 1}")

    def singular(self, p):
        if p["M"] ** 2 in (0, 1):
            return "M in {0, +-1} gives a singular curve"

    def forms(self, p):
        M2 = p["M"] ** 2
        return (1, 0, M2, 1), (M2, 0, 1, 1)

    def curve(self, p):
        M4 = p["M"] ** 4
        return CurveQ(1 + M4, M4, 0)

    def ratios(self, p, P):
        M = p["M"]
        u, v = P
        if u == -1:
            return Rejection("torsion-trivial", "u = -1")
        k = v / (M * (u + 1))
        a = M * M - k * k
        return [None if a == 0 else 2 * k / a]
