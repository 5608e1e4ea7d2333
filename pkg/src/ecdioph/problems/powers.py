"""Equal sums of like powers, the order 4 multigrade and single quartics made square."""
from fractions import Fraction
from collections import Counter

from ..curve import CurveQ
from ..exactnum import primitive_integers
from ..isogeny import isogeny2
from ..search import quartic_search
from .base import _display_rank, DegenerateParameter, Family, FamilyMeta, Rejection, quadratic_roots, register, sqrt_or_none


def _closure(sol, ops):
    """Orbit of sol under the group generated by ops."""
    seen, todo = {sol}, [sol]
    while todo:
        s = todo.pop()
        for op in ops:
            t = op(s)
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return list(seen)


@register
class SumCubesEqual(Family):
    name = "sum_cubes_equal"
    params = ("c",)
    fields = ("A", "B", "C", "D")
    description = "A^3 + B^3 = C^3 + D^3"
    homogeneous = True
    symmetry = ((1, 0, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1))
    meta = FamilyMeta("Z/1", "none over the rationals")

    def curve(self, p):
        c = p["c"]
        return CurveQ(0, 0, -27 * (3 * c * c + 1) ** 2)

    def candidates(self, p, P):
        c = p["c"]
        if P is None:
            return Rejection("torsion-trivial", "point at infinity")
        u, v = P
        # factor 3 here (not 2) is what the quartic reduction gives
        den = 3 * (4 * c * c * u - 3 * (c * c + 3) * (3 * c * c + 1))
        num = 2 * c * v + 3 * (1 - c * c) * u + 18 * (3 * c * c + 1)
        if den == 0 or num == 0:
            return Rejection("pole", "w undefined or zero")
        b = 1 + den / num
        if b == 0:
            return Rejection("pole", "b = 0")
        a2 = (3 * c * c + 1 - b**3) / (3 * b)
        a = sqrt_or_none(a2)
        if a is None:
            return Rejection("pole", "a is not rational")
        return [(s + b, c - 1, s - b, c + 1) for s in ((a, -a) if a else (a,))]

    def verify(self, p, sol):
        A, B, C, D = sol
        return A**3 + B**3 == C**3 + D**3

    def accept(self, p, P, sol):
        A, B, C, D = sol
        if sorted((A, B)) == sorted((C, D)) or sorted((A, B)) == sorted((-C, -D)) or A == -B:
            return "trivial"

    def parametric(self, k):
        c = Fraction(k)
        sol = (c**4 + 8 * c**3 - 6 * c * c - 3, 2 * c**4 - 2 * c**3 + 6 * c * c - 6 * c,
               c**4 - 8 * c**3 - 6 * c * c - 3, 2 * c**4 + 2 * c**3 + 6 * c * c + 6 * c)
        return {"c": c}, sol

    def common_value(self, c):
        """The shared cube sum of the closed-form family at c."""
        c = Fraction(c)
        return 9 * (c * c - 1) ** 3 * (c**6 + 33 * c**4 + 27 * c * c + 3)

    def simple_point(self, c):
        """The point whose double has w-denominator zero."""
        c = Fraction(c)
        return (3 * (3 * c * c + 1), 9 * c * (3 * c * c + 1))


@register
class EulerQuartic(Family):
    name = "euler_quartic"
    params = ("b",)
    fields = ("A", "B", "C", "D")
    description = "A^4 + B^4 = C^4 + D^4"
    homogeneous = True
    meta = FamilyMeta("Z/1", "b in {0, 1, -1}")

    def singular(self, p):
        if p["b"] in (0, 1, -1):
            return "singular when b = 0, 1, -1"

    def curve(self, p):
        b = p["b"]
        return CurveQ(0, -3 * b**4, -b * b * (b**8 + 1))

    def candidates(self, p, P):
        b = p["b"]
        if P is None:
            return Rejection("torsion-trivial", "point at infinity")
        u, v = P
        den = b**6 + 3 * b**4 - 3 * b * b * (u + 2) + u + 2 * v
        if den == 0:
            return Rejection("pole", "z undefined")
        z = (1 - b * b) * (b**4 + 10 * b * b + 1 - 4 * u) / den
        if z - b * b + 1 == 0:
            return Rejection("pole", "z = b^2 - 1")
        y = sqrt_or_none(-(b * b * (1 + z) ** 3 - 1) / (z - b * b + 1))
        if y is None:
            return Rejection("pole", "y is not rational")
        out = []
        for s in ((y, -y) if y else (y,)):
            pp, q, r = Fraction(1), b * s, b * (1 + z)
            out.append((pp + q, r - s, r + s, pp - q))
        return out

    def verify(self, p, sol):
        A, B, C, D = sol
        return A**4 + B**4 == C**4 + D**4

    def accept(self, p, P, sol):
        A, B, C, D = (abs(v) for v in sol)
        if sorted((A, B)) == sorted((C, D)) or 0 in (A, B, C, D):
            return "trivial"

    def normalize(self, sol):
        return tuple(abs(v) for v in Family.normalize(self, sol))

    def key(self, sol, p=None):
        A, B, C, D = self.normalize(sol)
        return tuple(v for pair in sorted([sorted((A, B)), sorted((C, D))]) for v in pair)

    def generator_hint(self, b):
        """The point whose double has z = 0, with the sign that gives a nontrivial solution."""
        b = Fraction(b)
        return (b**4 + b * b + 1, -(b**6 + b**4 + b * b + 1))

    def parametric(self, k):
        b = Fraction(k)
        A = (b - 1) * (b**6 + 9 * b**5 - 8 * b**4 - 6 * b**3 - 23 * b * b - 3 * b - 2)
        B = (b + 1) * (2 * b**6 - 3 * b**5 + 23 * b**4 - 6 * b**3 + 8 * b * b + 9 * b - 1)
        C = (b - 1) * (2 * b**6 + 3 * b**5 + 23 * b**4 + 6 * b**3 + 8 * b * b - 9 * b - 1)
        D = -(b + 1) * (b**6 - 9 * b**5 - 8 * b**4 + 6 * b**3 - 23 * b * b + 3 * b - 2)
        return {"b": b}, (A, B, C, D)


def multigrade_check(A, B, C, D, E, t):
    """Both five-term power sums agree for n = 1..4 and the side conditions hold."""
    A, B, C, D, E, t = (Fraction(v) for v in (A, B, C, D, E, t))
    if A + B != C + D + E or A**3 + B**3 != C**3 + D**3 + E**3:
        return False
    s1 = (A + t, B + t, t - C, t - D, t - E)
    s2 = (t - A, t - B, C + t, D + t, E + t)
    return all(sum(x**n for x in s1) == sum(x**n for x in s2) for n in range(1, 5))


@register
class Multigrade4(Family):
    name = "multigrade4"
    params = ("C", "D")
    fields = ("A", "B", "C", "D", "E")
    description = "A + B = C + D + E and A^3 + B^3 = C^3 + D^3 + E^3"
    symmetry = ((1, 0, 2, 3, 4),)
    meta = FamilyMeta("Z/3", "C D (C + D)(C - D) = 0")

    def singular(self, p):
        C, D = p["C"], p["D"]
        if C * D * (C + D) * (C - D) == 0:
            return "degenerate when C D (C + D)(C - D) = 0"

    def _ab(self, p):
        C, D = p["C"], p["D"]
        return 2 * (C + D), 4 * C * D * (C + D)

    def curve(self, p):
        a, b = self._ab(p)
        return CurveQ(a * a, 2 * a * b, b * b)

    def candidates(self, p, P):
        C, D = p["C"], p["D"]
        if P is None or P[0] == 0:
            return Rejection("torsion-trivial", "u = 0")
        u, v = P
        B = (v - 4 * C * D * (C + D)) / (2 * u)
        k = B - C - D
        if k == 0:
            return Rejection("pole", "B = C + D")
        return [(A, B, C, D, A + B - C - D) for A in quadratic_roots(k, k * k, -(B - C) * (B - D) * (C + D))]

    def verify(self, p, sol):
        A, B, C, D, E = sol
        return (C, D) == (p["C"], p["D"]) and A + B == C + D + E and A**3 + B**3 == C**3 + D**3 + E**3

    def accept(self, p, P, sol):
        A, B, C, D, E = sol
        if Counter((A, B, -C, -D, -E)) == Counter((-A, -B, C, D, E)):
            return "trivial"

    def doubled_solution(self, C, D):
        """Solution from twice the generator (-4CD, 4CD(C - D))."""
        C, D = Fraction(C), Fraction(D)
        A = (C**3 + D**3) / (C * D)
        B = (C**3 - C * D * D + D**3) / (C * (C - D))
        E = (C**3 - C * C * D + D**3) / (D * (C - D))
        return (A, B, C, D, E)

    def parametric(self, k):
        k = Fraction(k)
        A, B = 2 * (k * k - 2 * k - 35), 3 * (5 * k - 2)
        C, D = -3 * (k * k + 4 * k + 22), 3 * (k * k - 16)
        E = (k + 2) * (2 * k + 19)
        params = {"C": C, "D": D}
        if self.singular(params):
            raise DegenerateParameter(f"k = {k} is degenerate")
        return params, (A, B, C, D, E)


@register
class SimpleQuartic(Family):
    name = "simple_quartic"
    params = ("M", "N")
    fields = ("x", "y", "z")
    description = "z^2 = x^4 + M x^2 y^2 + N y^4"
    meta = FamilyMeta(None, "N = 0 or M^2 = 4N")

    def singular(self, p):
        M, N = p["M"], p["N"]
        if N == 0 or M * M == 4 * N:
            return "singular when N = 0 or M^2 = 4N"

    def curve(self, p):
        M, N = p["M"], p["N"]
        return CurveQ(-2 * M, M * M - 4 * N, 0)

    def candidates(self, p, P):
        if P is None or P[0] == 0:
            return Rejection("torsion-trivial", "u = 0")
        u, v = P
        return self._from_ratio(p, v / (2 * u))

    def _from_ratio(self, p, t):
        x, y = primitive_integers((t, 1))
        z = sqrt_or_none(x**4 + p["M"] * x * x * y * y + p["N"] * y**4)
        if z is None:
            return Rejection("pole", "quartic value is not a square")
        return [(Fraction(x), Fraction(y), z)]

    def verify(self, p, sol):
        x, y, z = sol
        return z * z == x**4 + p["M"] * x * x * y * y + p["N"] * y**4

    def accept(self, p, P, sol):
        if sol[0] * sol[1] == 0:
            return "trivial"

    def normalize(self, sol):
        x, y, z = (Fraction(v) for v in sol)
        if x == 0 or y == 0:
            return (x, y, abs(z))
        x2, y2 = primitive_integers((abs(x), abs(y)))
        s = Fraction(x2) / abs(x)
        return (Fraction(x2), Fraction(y2), abs(z) * s * s)

    def isogenies(self, p):
        return [isogeny2(self.curve(p))]


class _ProdFamily(Family):
    """(x^2 - e1 y^2)(z^2 - e2 w^2) = N x y z w via g = x/y, h = z/w."""

    fields = ("x", "y", "z", "w")
    signs = (1, 1)

    def verify(self, p, sol):
        x, y, z, w = sol
        e1, e2 = self.signs
        return x * y * z * w != 0 and (x * x - e1 * y * y) * (z * z - e2 * w * w) == p["N"] * x * y * z * w

    def solution(self, g, h):
        x, y = primitive_integers((g, 1))
        z, w = primitive_integers((h, 1))
        return tuple(Fraction(v) for v in (x, y, z, w))

    def g_roots(self, p, h):
        """g with (g - e1/g)(h - e2/h) = N."""
        e1, e2 = self.signs
        N = p["N"]
        if h == 0 or h * h == e2:
            return []
        # g - e1/g = N h/(h^2 - e2)
        m = N * h / (h * h - e2)
        return quadratic_roots(1, -m, -e1)

    def normalize(self, sol):
        x, y, z, w = (Fraction(v) for v in sol)
        if y < 0:
            x, y = -x, -y
        if w < 0:
            z, w = -z, -w
        a, b = primitive_integers((x, y)) if (x or y) else (0, 0)
        c, d = primitive_integers((z, w)) if (z or w) else (0, 0)
        return tuple(Fraction(v) for v in (a, b, c, d))

    def ops(self):
        # (g, h) moves keeping (g - e1/g)(h - e2/h) fixed
        e1, e2 = self.signs
        ops = [lambda s: (-s[0], s[1], -s[2], s[3])]
        ops.append((lambda s: (-s[1], s[0], s[2], s[3])) if e1 == 1 else (lambda s: (s[1], s[0], s[2], s[3])))
        ops.append((lambda s: (s[0], s[1], -s[3], s[2])) if e2 == 1 else (lambda s: (s[0], s[1], s[3], s[2])))
        if e1 == 1:
            ops.append(lambda s: (s[1], s[0], -s[2], s[3]))
        if e1 == e2:
            ops.append(lambda s: (s[2], s[3], s[0], s[1]))
        return ops

    def key(self, sol, p=None):
        orbit = _closure(self.normalize(sol), [lambda s, op=op: self.normalize(op(s)) for op in self.ops()])
        return min(orbit, key=_display_rank)


@register
class ProdDiff(_ProdFamily):
    name = "prod_diff"
    description = "(x^2 - y^2)(z^2 - w^2) = N x y z w"
    meta = FamilyMeta("Z/2+Z/4", "N in {0, 4, -4}")

    def singular(self, p):
        if p["N"] in (0, 4, -4):
            return "singular when N = 0 or N^2 = 16"

    def curve(self, p):
        N = p["N"]
        return CurveQ(16 + N * N, 16 * N * N, 0)

    def candidates(self, p, P):
        N = p["N"]
        if P is None or P[0] == -N * N:
            return Rejection("torsion-trivial", "h undefined")
        U, V = P
        h = V / (4 * (U + N * N))
        gs = self.g_roots(p, h)
        if not gs:
            return Rejection("torsion-trivial", "h = 0 or |h| = 1")
        return [self.solution(g, h) for g in gs if g != 0]

    def isogenies(self, p):
        return [isogeny2(self.curve(p))]


@register
class ProdMixed(_ProdFamily):
    name = "prod_mixed"
    description = "(x^2 - y^2)(z^2 + w^2) = N x y z w"
    signs = (1, -1)
    meta = FamilyMeta("Z/2+Z/2", "N = 0")

    def singular(self, p):
        if p["N"] == 0:
            return "singular when N = 0"

    def curve(self, p):
        N = p["N"]
        return CurveQ(N * N + 32, 16 * (N * N + 16), 0)

    def candidates(self, p, P):
        N = p["N"]
        if P is None or P[0] == -(N * N + 16):
            return Rejection("torsion-trivial", "h undefined")
        U, V = P
        h = V / (4 * (U + N * N + 16))
        gs = self.g_roots(p, h)
        if not gs:
            return Rejection("torsion-trivial", "h = 0")
        return [self.solution(g, h) for g in gs if g != 0]

    def isogenies(self, p):
        return [isogeny2(self.curve(p))]


@register
class ProdSum(_ProdFamily):
    name = "prod_sum"
    description = "(x^2 + y^2)(z^2 + w^2) = N x y z w"
    signs = (-1, -1)
    has_curve = False
    meta = FamilyMeta(None, "N = 0")

    def singular(self, p):
        if p["N"] == 0:
            return "N = 0"

    def quartic(self, p):
        N = p["N"]
        return lambda h: -4 * h**4 + (N * N - 8) * h * h - 4

    def direct(self, p, bound):
        out = []
        for h, _ in quartic_search(self.quartic(p), bound):
            for g in self.g_roots(p, h):
                if g != 0:
                    out.append(self.solution(g, h))
        return out
