"""Triangle families: equal sum and product, congruent numbers and relatives."""
from fractions import Fraction
from math import gcd, isqrt

from ..curve import CurveQ
from ..isogeny import isogeny2, isogeny3, isogeny4, match_model, three_isogeny_at, two_isogeny_at, compose
from .base import (
    ALL_PERMS3, Family, FamilyMeta, Rejection, heron16, is_triangle, quadratic_roots,
    register, sqrt_or_none,
)
from ..search import farey_params


def _positive(sol):
    return all(v > 0 for v in sol)


@register
class EqSumProduct(Family):
    name = "eq_sum_product"
    fields = ("x", "y", "z")
    description = "x + y + z = N = x y z"
    symmetry = ALL_PERMS3
    meta = FamilyMeta("Z/3", "N = 0", "positive solutions come from egg points")

    def singular(self, p):
        if p["N"] == 0:
            return "N = 0 gives a singular curve"

    def curve(self, p):
        N = p["N"]
        return CurveQ(N * N, 8 * N * N, 16 * N * N)

    def candidates(self, p, P):
        N = p["N"]
        if P is None or P[0] == 0:
            return Rejection("torsion-trivial", "H = 0 gives no finite x")
        x = -4 * N / P[0]
        out = []
        for y in quadratic_roots(x, x * (x - N), N):
            if y != 0:
                out.append((x, y, N / (x * y)))
        return out

    def verify(self, p, sol):
        x, y, z = sol
        return x + y + z == p["N"] == x * y * z

    def status(self, p, sol):
        return "positive" if _positive(sol) else "signed"

    def isogenies(self, p):
        N = p["N"]
        E = self.curve(p)
        printed = CurveQ(-27 * N * N, 216 * N * N * (N * N - 27), -432 * N * N * (N * N - 27) ** 2)
        return [match_model(isogeny3(E, N, 4 * N), printed)]

    def parametric(self, k):
        k = Fraction(k)
        if k == 0:
            raise ValueError("k = 0 is degenerate")
        return {"N": 2 * k * k - 2}, ((1 - k) / k, 2 * k * k, -(k + 1) / k)


@register
class Congruent(Family):
    name = "congruent"
    fields = ("a", "b", "h")
    description = "a^2 + b^2 = h^2, a b / 2 = N"
    symmetry = ((1, 0, 2),)
    meta = FamilyMeta("Z/2+Z/2", "N = 0")

    def singular(self, p):
        if p["N"] == 0:
            return "N = 0 gives a singular curve"

    def curve(self, p):
        return CurveQ(0, -p["N"] ** 2, 0)

    def candidates(self, p, P):
        N = p["N"]
        if P is None or P[1] == 0:
            return Rejection("torsion-trivial", "2-torsion gives no triangle")
        u, v = P
        a = abs(v / u)
        return [(a, 2 * N / a, abs((u * u + N * N) / v))]

    def verify(self, p, sol):
        a, b, h = sol
        return a > 0 and b > 0 and h > 0 and a * a + b * b == h * h and a * b == 2 * p["N"]

    def isogenies(self, p):
        return [isogeny2(self.curve(p))]


def congruent_descent(N, bound=100):
    """Search -N^2 p^4 + 6 N p^2 q^2 - q^4 = 4 s^2 and map hits to triangles.

    Returns a list of (p, q, s, point, triangle).
    """
    N = Fraction(N)
    fam = Congruent()
    E = fam.curve({"N": N})
    out = []
    for q in range(1, bound + 1):
        for pp in range(1, bound + 1):
            if gcd(pp, q) != 1:
                continue
            lhs = -N * N * pp**4 + 6 * N * pp * pp * q * q - q**4
            if lhs < 0 or lhs.denominator != 1 or lhs % 4:
                continue
            s2 = int(lhs) // 4
            s = isqrt(s2)
            if s * s != s2:
                continue
            u = (N * pp * pp - q * q) / 2
            v = Fraction(pp * q)
            r = (N * pp * pp + q * q) / 2
            w = r * s
            if u == 0:
                continue
            x = -u * u / (v * v)
            for y in (-u * w / v**3, u * w / v**3):
                if E.contains((x, y)):
                    tri = fam.candidates({"N": N}, (x, y))
                    if not isinstance(tri, Rejection):
                        out.append((pp, q, s, (x, y), tri[0]))
                    break
    return out


@register
class ThetaCongruent(Family):
    name = "theta_congruent"
    params = ("N", "s", "r")
    fields = ("a", "b", "c")
    description = "triangle with cos(theta) = s/r between b and c and area N sqrt(r^2 - s^2)"
    symmetry = ((0, 2, 1),)
    meta = FamilyMeta("Z/2+Z/2", "N = 0 or s^2 >= r^2")

    def singular(self, p):
        if p["N"] == 0:
            return "N = 0 gives a singular curve"
        if p["r"] == 0 or p["s"] ** 2 >= p["r"] ** 2:
            return "need |s/r| < 1"

    def curve(self, p):
        N, s, r = p["N"], p["s"], p["r"]
        return CurveQ(2 * N * s, N * N * (s * s - r * r), 0)

    def candidates(self, p, P):
        N, s, r = p["N"], p["s"], p["r"]
        if P is None or P[1] == 0:
            return Rejection("torsion-trivial", "2-torsion gives b = 0")
        b = abs(P[1] / P[0])
        c = 2 * r * N / b
        a = sqrt_or_none(b * b + c * c - 4 * s * N)
        return [] if a is None else [(a, b, c)]

    def verify(self, p, sol):
        N, s, r = p["N"], p["s"], p["r"]
        a, b, c = sol
        if not is_triangle(a, b, c):
            return False
        return (b * b + c * c - a * a) * r == 2 * b * c * s and heron16(a, b, c) == 16 * N * N * (r * r - s * s)

    def isogenies(self, p):
        return [isogeny2(self.curve(p))]


@register
class TCongruent(Family):
    name = "t_congruent"
    params = ("m", "n")
    fields = ("a", "b", "c")
    description = "a^2 = b^2 + c^2 - 2bc(1-t^2)/(1+t^2), 2 = bc 2t/(1+t^2), t = m/n"
    symmetry = ((0, 2, 1),)
    meta = FamilyMeta("Z/2+Z/2", "m n = 0")

    def singular(self, p):
        if p["m"] == 0 or p["n"] == 0:
            return "t = 0 or undefined"

    def curve(self, p):
        m, n = p["m"], p["n"]
        return CurveQ(m * n**3 - m**3 * n, -(m**4) * n**4, 0)

    def candidates(self, p, P):
        m, n = p["m"], p["n"]
        if P is None or P[1] == 0:
            return Rejection("torsion-trivial", "2-torsion gives b = 0")
        t = m / n
        b = abs(P[1] / (m * n * P[0]))
        c = (t * t + 1) / (b * t)
        a = sqrt_or_none(b * b + c * c - 2 * b * c * (1 - t * t) / (1 + t * t))
        return [] if a is None else [(a, b, c)]

    def verify(self, p, sol):
        t = p["m"] / p["n"]
        a, b, c = sol
        if not (a > 0 and b > 0 and c > 0):
            return False
        return a * a == b * b + c * c - 2 * b * c * (1 - t * t) / (1 + t * t) and 2 == b * c * 2 * t / (1 + t * t)

    def isogenies(self, p):
        return [isogeny2(self.curve(p))]


class _BaseAltitude(Family):
    fields = ("b", "y", "z")
    homogeneous = True
    symmetry = ((0, 2, 1),)
    meta = FamilyMeta("Z/4", "N = 0")

    def singular(self, p):
        if p["N"] == 0:
            return "N = 0 gives a singular curve"

    def _ratio(self, p):
        """base / altitude."""
        raise NotImplementedError

    def _k(self, p, P):
        raise NotImplementedError

    def candidates(self, p, P):
        if P is None:
            return Rejection("torsion-trivial", "point at infinity")
        k = self._k(p, P)
        if k is None or k * k == 1:
            return Rejection("torsion-trivial", "altitude k^2 - 1 vanishes")
        a = k * k - 1
        x = 2 * k
        b = self._ratio(p) * a
        z = sqrt_or_none(a * a + (b - x) ** 2)
        return [] if z is None else [(abs(b), k * k + 1, z)]

    def verify(self, p, sol):
        b, y, z = sol
        R = self._ratio(p)
        return is_triangle(b, y, z) and 4 * b**4 == R * R * heron16(b, y, z)

    def status(self, p, sol):
        return "positive-triangle"


@register
class BaseAltBA(_BaseAltitude):
    name = "base_alt_ba"
    description = "triangle (b, y, z) whose altitude onto b is b / N"

    def _ratio(self, p):
        return p["N"]

    def curve(self, p):
        N = p["N"]
        return CurveQ(N * N + 2, 1, 0)

    def _k(self, p, P):
        N = p["N"]
        g, h = P[1], P[0]
        den = g + (N - 1) * h - 1
        return None if den == 0 else (g + (N + 1) * h + 1) / den

    def isogenies(self, p):
        N = p["N"]
        E = self.curve(p)
        two = match_model(isogeny2(E), CurveQ(-2 * (N * N + 2), N * N * (N * N + 4), 0))
        four = match_model(isogeny4(E, N, 1), CurveQ(2 * (4 - N * N), (N * N + 4) ** 2, 0))
        return [two, four, compose(four, isogeny2(four.target))]


@register
class BaseAltAB(_BaseAltitude):
    name = "base_alt_ab"
    description = "triangle (b, y, z) whose altitude onto b is N b"

    def _ratio(self, p):
        return 1 / p["N"]

    def curve(self, p):
        N = p["N"]
        return CurveQ(2 * N * N + 1, N**4, 0)

    def _k(self, p, P):
        N = p["N"]
        g, h = P[1], P[0]
        den = g + (1 - N) * h - N**3
        return None if den == 0 else (g + (N + 1) * h + N**3) / den

    def isogenies(self, p):
        N = p["N"]
        E = self.curve(p)
        four = isogeny4(E, 1, N * N)
        return [isogeny2(E), four, compose(four, isogeny2(four.target))]


@register
class Leech(Family):
    name = "leech"
    fields = ("b", "a", "c", "d")
    description = "b^2 + a^2 = c^2 and b^2 + N^2 a^2 = d^2"
    homogeneous = True
    meta = FamilyMeta("Z/2+Z/4", "N^2 in {0, 1}")

    def singular(self, p):
        if p["N"] ** 2 in (0, 1):
            return "N = 0 or N = +-1 gives a singular curve"

    def curve(self, p):
        N = p["N"]
        return CurveQ(N * N + 1, N * N, 0)

    def candidates(self, p, P):
        N = p["N"]
        if P is None or P[0] + N * N == 0:
            return Rejection("torsion-trivial", "p/q undefined")
        t = P[1] / (P[0] + N * N)
        if t == 0 or t * t == 1:
            return Rejection("torsion-trivial", "p/q is 0 or +-1")
        pp, q = t.numerator, t.denominator
        b, a = abs(pp * pp - q * q), 2 * abs(pp * q)
        return [_leech_tuple(N, b, a)]

    def verify(self, p, sol):
        b, a, c, d = sol
        N = p["N"]
        return a != 0 and b != 0 and b * b + a * a == c * c and b * b + N * N * a * a == d * d

    def isogenies(self, p):
        return [isogeny2(self.curve(p))]

    def parametric(self, k):
        k = Fraction(k)
        N = 4 * k * k + 3 * k
        return {"N": N}, _leech_tuple(N, 4 * k * (2 * k + 1), 4 * k + 1)


def _leech_tuple(N, b, a):
    b, a = Fraction(b), Fraction(a)
    return (b, a, sqrt_or_none(b * b + a * a), sqrt_or_none(b * b + N * N * a * a))


def _rr(a, b, c):
    return 2 * a * b * c / ((a + b - c) * (b + c - a) * (c + a - b))


@register
class CircumIn(Family):
    name = "circum_in"
    fields = ("a", "b", "c")
    description = "integer triangle with circumradius / inradius = N"
    homogeneous = True
    symmetry = ALL_PERMS3
    meta = FamilyMeta("Z/6", "N = 2 (and N = 0, -1/4)", "triangles come only from egg points")

    def singular(self, p):
        N = p["N"]
        if N in (0, 2) or 4 * N + 1 == 0:
            return "N in {0, 2, -1/4} gives a singular curve"

    def curve(self, p):
        N = p["N"]
        return CurveQ(2 * (2 * N * N - 2 * N - 1), 4 * N + 1, 0)

    def _u(self, p, P):
        N = p["N"]
        return (4 * N + 1 - P[0]) / (2 * N)

    def candidates(self, p, P):
        N = p["N"]
        if P is None:
            return Rejection("torsion-trivial", "point at infinity")
        if P[1] != 0 and self.curve(p).component_of(P) != "egg":
            return Rejection("infinite-component", f"{P} is not on the egg")
        u = self._u(p, P)
        den = 2 * (2 * N * (u - 2) - 1)
        if den == 0:
            return Rejection("pole", "2N(u - 2) = 1")
        roots = quadratic_roots(1, 1 - u, N * u * (u - 2) ** 2 / den)
        if not roots:
            return []
        a, c = roots[0], roots[-1]
        return [(a, Fraction(1), c)]

    def accept(self, p, P, sol):
        if self.curve(p).component_of(P) != "egg":
            return "infinite-component"
        if self._u(p, P) <= 2:
            return "perimeter-ratio"
        return None

    def verify(self, p, sol):
        a, b, c = sol
        if not is_triangle(a, b, c):
            return False
        return 2 * a * b * c == p["N"] * (a + b - c) * (b + c - a) * (c + a - b)

    def status(self, p, sol):
        return "positive-triangle"

    def isogenies(self, p):
        N = p["N"]
        E = self.curve(p)
        ecbw2 = match_model(isogeny2(E), CurveQ(-4 * (2 * N * N - 2 * N - 1), 16 * N**3 * (N - 2), 0))
        k = 2 * N * N + 10 * N - 1
        ecbw3 = match_model(three_isogeny_at(E, (Fraction(1), 2 * N)), CurveQ(18 * k, 81 * (4 * N + 1) ** 3, 0))
        ecbw6 = match_model(compose(ecbw3, isogeny2(ecbw3.target)), CurveQ(-36 * k, 1296 * N * (N - 2) ** 3, 0))
        return [ecbw2, ecbw3, ecbw6]


@register
class MedianBisector(Family):
    name = "median_bisector_mt"
    fields = ("a", "b", "c")
    description = "triangle whose median / angle bisector from A equals N"
    homogeneous = True
    symmetry = ((0, 2, 1),)
    meta = FamilyMeta("Z/2", "N^2 in {0, 1}")

    def singular(self, p):
        if p["N"] ** 2 in (0, 1):
            return "N = 0 or N = +-1 gives a singular curve"

    def curve(self, p):
        N = p["N"]
        return CurveQ(2 * (2 * N**4 - N * N - 1), (N * N - 1) ** 2, 0)

    def candidates(self, p, P):
        N = p["N"]
        if P is None or P[0] == 0:
            return Rejection("torsion-trivial", "u = 0 gives no ratio")
        w = P[1] / (4 * (N * N - 1) * P[0]) - Fraction(1, 2)
        if w == 0:
            return Rejection("pole", "w = 0")
        b, c = 1 + 1 / w, Fraction(1)
        den = b * b + 2 * b * c * (1 - 2 * N * N) + c * c
        if den == 0:
            return Rejection("pole", "a undefined")
        a = sqrt_or_none(2 * (b + c) ** 2 * (b * b - 2 * b * c * N * N + c * c) / den)
        return [] if a is None else [(a, b, c)]

    def verify(self, p, sol):
        a, b, c = sol
        N = p["N"]
        return is_triangle(a, b, c) and (a * a - 2 * (b * b + c * c)) * (b + c) ** 2 == 4 * N * N * b * c * (a * a - (b + c) ** 2)

    def status(self, p, sol):
        return "positive-triangle"

    def isogenies(self, p):
        return [isogeny2(self.curve(p))]

    def parametric(self, k):
        N = Fraction(k)
        s = N**4 - N * N + 1
        return {"N": N}, (
            2 * (N**8 - 3 * N**4 + 1),
            (N**4 + 2 * N**3 + N * N - 2 * N - 1) * s,
            (N**4 - 2 * N**3 + N * N + 2 * N - 1) * s,
        )


@register
class MedianAltitude(Family):
    name = "median_alt_mh"
    fields = ("a", "b", "c")
    description = "triangle whose median / altitude from A equals N"
    homogeneous = True
    symmetry = ((0, 2, 1),)
    meta = FamilyMeta("Z/4", "N^2 in {0, 1}")

    def singular(self, p):
        if p["N"] ** 2 in (0, 1):
            return "N = 0 or N = +-1 gives a singular curve"

    def curve(self, p):
        N = p["N"]
        return CurveQ(4 * N**4 - 6 * N * N + 2, (N * N - 1) ** 2, 0)

    def candidates(self, p, P):
        N = p["N"]
        if P is None:
            return Rejection("torsion-trivial", "point at infinity")
        n2 = N * N
        a = P[0] / (2 * (1 - n2)) + Fraction(1, 2)
        A = 4 * (a * a - 2 * a * n2 + n2)
        B = 4 * (a**3 - a * a * (2 * n2 + 1) + 3 * a * n2 - n2)
        C = a**4 - 4 * a**3 + 2 * a * a * (2 * n2 + 1) - 4 * a * n2 + n2
        if A == 0 and B == 0:
            return Rejection("pole", "b undefined")
        return [(a, b, 1 - a - b) for b in quadratic_roots(A, B, C)]

    def verify(self, p, sol):
        a, b, c = sol
        n2 = p["N"] ** 2
        if not is_triangle(a, b, c):
            return False
        return (n2 - 1) * a**4 + 2 * (1 - n2) * (b * b + c * c) * a * a + n2 * (b * b - c * c) ** 2 == 0

    def status(self, p, sol):
        return "positive-triangle"

    def isogenies(self, p):
        return [isogeny2(self.curve(p))]


@register
class BisectorAltitude(Family):
    name = "bisector_alt_th"
    fields = ("a", "b", "c")
    description = "triangle whose angle bisector / altitude from A equals N"
    homogeneous = True
    symmetry = ((0, 2, 1),)
    meta = FamilyMeta(None, "N = 0", "a conic, no elliptic curve")
    has_curve = False

    def singular(self, p):
        if p["N"] == 0:
            return "N = 0"

    def verify(self, p, sol):
        a, b, c = sol
        N = p["N"]
        return is_triangle(a, b, c) and 4 * a * a * b * c == N * N * (a + b - c) * (a + c - b) * (b + c) ** 2

    def status(self, p, sol):
        return "positive-triangle"

    def closed_form(self, p):
        N = p["N"]
        return (4 * N * N - 1, 2 * N * N * (4 * N * N - 3), (2 * N * N - 1) * (4 * N * N - 3))

    def slope_solution(self, p, k):
        """Triangle from the line y = N + k x through (0, N) on the conic."""
        N = Fraction(p["N"])
        k = Fraction(k)
        b, c = 2 * (N * k + 2 - N * N), N * N - k * k
        if c == 0:
            return None
        y = N + k * b / c
        if y == 0:
            return None
        return (abs(N * (b * b - c * c) / (c * y)), b, c)

    def direct(self, p, bound):
        """Closed form plus slopes k in (N - 2/N, N) with small height."""
        N = abs(p["N"])
        out = [self.closed_form(p)]
        for k in farey_params(bound, include_infinity=False):
            if N - 2 / N < k < N:
                sol = self.slope_solution(p, k)
                if sol is not None:
                    out.append(sol)
        return out

    def parametric(self, k):
        N = Fraction(k)
        return {"N": N}, self.closed_form({"N": N})
