"""Cubic representations: two cubes, Knight, Bremner-Guy and relatives."""
from fractions import Fraction

from ..curve import CurveQ
from ..exactnum import factorize
from ..isogeny import compose, isogeny2, isogeny3, match_model, three_isogeny_at, two_isogeny_at
from .base import ALL_PERMS3, CYCLIC3, Family, FamilyMeta, Rejection, register


def cubefree_split(N):
    """(n, m) with N = n m^3 and n a cubefree integer (N a nonzero integer)."""
    N = Fraction(N)
    if N.denominator != 1 or N == 0:
        raise ValueError("cubefree splitting needs a nonzero integer")
    n, m = (1 if N > 0 else -1), 1
    for p, e in factorize(int(N)).items():
        m *= p ** (e // 3)
        n *= p ** (e % 3)
    return Fraction(n), Fraction(m)


def _ab_s_candidates(plus, minus):
    """(a, b, c) with a/s, b/s given and s = 1, for both sign choices."""
    return [(plus, minus, 1 - plus - minus)]


@register
class TwoCubes(Family):
    name = "two_cubes"
    fields = ("a", "b")
    description = "a^3 + b^3 = N"
    symmetry = ((1, 0),)
    meta = FamilyMeta("Z/1", "N = 0", "Z/3 at N = 1, Z/2 at N = 2")

    def singular(self, p):
        if p["N"] == 0:
            return "N = 0 gives a singular curve"

    def _split(self, p):
        N = p["N"]
        return cubefree_split(N) if N.denominator == 1 else (N, Fraction(1))

    def curve(self, p):
        n, _ = self._split(p)
        return CurveQ(0, 0, -432 * n * n)

    def candidates(self, p, P):
        n, m = self._split(p)
        if P is None or P[0] == 0:
            return Rejection("torsion-trivial", "h = 0")
        h, g = P
        a, b = m * (36 * n + g) / (6 * h), m * (36 * n - g) / (6 * h)
        return [(a, b)]

    def verify(self, p, sol):
        a, b = sol
        return a**3 + b**3 == p["N"]

    def accept(self, p, P, sol):
        return "trivial" if 0 in sol else None


@register
class Knight(Family):
    name = "knight"
    fields = ("X", "Y", "Z")
    description = "(X + Y + Z)(1/X + 1/Y + 1/Z) = N"
    homogeneous = True
    symmetry = ALL_PERMS3
    meta = FamilyMeta("Z/6", "N in {0, 1, 9}")

    def singular(self, p):
        if p["N"] in (0, 1, 9):
            return "singular when N = 0, 1, 9"

    def curve(self, p):
        N = p["N"]
        return CurveQ(N * N - 6 * N - 3, 16 * N, 0)

    def candidates(self, p, P):
        N = p["N"]
        if P is None or P[0] == 4 * N:
            return Rejection("torsion-trivial", "h = 4N is a pole")
        h, g = P
        den = 2 * (h - 4 * N)
        X, Y = (g + (N - 1) * h) / den, (-g + (N - 1) * h) / den
        return [(X, Y, Fraction(1))]

    def verify(self, p, sol):
        X, Y, Z = sol
        if X * Y * Z == 0:
            return False
        return (X + Y + Z) * (1 / X + 1 / Y + 1 / Z) == p["N"]

    def isogenies(self, p):
        N = p["N"]
        E = self.curve(p)
        two = match_model(isogeny2(E), CurveQ(-2 * (N * N - 6 * N - 3), (N - 9) * (N - 1) ** 3, 0))
        three = three_isogeny_at(E, (Fraction(4), 4 * (N - 1)))
        T = three.push((Fraction(0), Fraction(0)))
        six = compose(three, two_isogeny_at(three.target, T))
        six = match_model(six, CurveQ(-2 * (N * N + 18 * N - 27), (N - 1) * (N - 9) ** 3, 0))
        return [two, six]

    def parametric(self, k):
        k = Fraction(k)
        return {"N": -(k - 2) * (k + 1)}, (-k * (k - 1), Fraction(1), k - 1)


@register
class BremnerGuyA(Family):
    name = "bga"
    fields = ("X", "Y", "Z")
    description = "(X + Y + Z)^3 = N X Y Z"
    homogeneous = True
    symmetry = ALL_PERMS3
    meta = FamilyMeta("Z/3", "N in {0, 27}")

    def singular(self, p):
        if p["N"] in (0, 27):
            return "singular when N = 0, 27"

    def curve(self, p):
        N = p["N"]
        return CurveQ(N * N, 8 * N**3, 16 * N**4)

    def candidates(self, p, P):
        N = p["N"]
        if P is None or P[0] == 0:
            return Rejection("torsion-trivial", "h = 0")
        h, g = P
        X, Y = (g + N * (h + 4 * N)) / (2 * N * h), (-g + N * (h + 4 * N)) / (2 * N * h)
        return [(X, Y, 1 - X - Y)]

    def verify(self, p, sol):
        X, Y, Z = sol
        return X * Y * Z != 0 and (X + Y + Z) ** 3 == p["N"] * X * Y * Z

    def isogenies(self, p):
        N = p["N"]
        return [isogeny3(self.curve(p), N, 4 * N * N)]

    def parametric(self, k):
        k = Fraction(k)
        return {"N": -k * k}, (Fraction(-1), Fraction(1), k)


@register
class BremnerGuyB1(Family):
    name = "bgb1"
    fields = ("X", "Y", "Z")
    description = "X/Y + Y/Z + Z/X = N"
    homogeneous = True
    symmetry = CYCLIC3
    meta = FamilyMeta("Z/3", "N = 3", "Z/6 at N = 5")

    def singular(self, p):
        N = p["N"]
        if N == 3 or N * N + 3 * N + 9 == 0:
            return "singular when N = 3"

    def curve(self, p):
        N = p["N"]
        return CurveQ(N * N, 8 * N, 16)

    def candidates(self, p, P):
        N = p["N"]
        if P is None or P[0] == 0:
            return Rejection("torsion-trivial", "H = 0")
        H, G = P
        Z = -H / 4
        return [((N * H + 4 + s) / (2 * H), Fraction(1), Z) for s in (G, -G)]

    def verify(self, p, sol):
        X, Y, Z = sol
        return X * Y * Z != 0 and X / Y + Y / Z + Z / X == p["N"]

    def isogenies(self, p):
        N = p["N"]
        E = self.curve(p)
        printed = CurveQ(-27 * N * N, 216 * N * (N**3 - 27), -432 * (N**3 - 27) ** 2)
        return [match_model(isogeny3(E, N, 4), printed)]

    def parametric(self, k):
        k = Fraction(k)
        return {"N": -(k + 1) ** 2}, (Fraction(1), k + 1, -(k + 1) ** 2)


@register
class BremnerGuyB2(Family):
    name = "bgb2"
    fields = ("a", "b", "c")
    description = "a^3 + b^3 + c^3 = N a b c"
    homogeneous = True
    symmetry = ALL_PERMS3
    meta = FamilyMeta("Z/3", "N = 3", "Z/6 at N = 5")

    def singular(self, p):
        N = p["N"]
        if N == 3 or N * N + 3 * N + 9 == 0:
            return "singular when N = 3"

    def _ab(self, p):
        N = p["N"]
        return N + 6, 4 * (N * N + 3 * N + 9)

    def curve(self, p):
        a, b = self._ab(p)
        return CurveQ(a * a, 2 * a * b, b * b)

    def candidates(self, p, P):
        N = p["N"]
        if P is None or P[0] == 0:
            return Rejection("torsion-trivial", "H = 0")
        H, G = P
        _, B = self._ab(p)
        den = 2 * H * (N - 3)
        return _ab_s_candidates((G + N * H + B) / den, (-G + N * H + B) / den)

    def verify(self, p, sol):
        a, b, c = sol
        return a * b * c != 0 and a**3 + b**3 + c**3 == p["N"] * a * b * c

    def isogenies(self, p):
        a, b = self._ab(p)
        return [isogeny3(self.curve(p), a, b)]

    def to_bgb1(self, sol):
        a, b, c = sol
        return (a * a * b, b * b * c, c * c * a)


@register
class CubeRatio(Family):
    name = "cube_ratio"
    fields = ("a", "b", "c")
    description = "(a + b + c)^3 = N (a^3 + b^3 + c^3)"
    homogeneous = True
    symmetry = ALL_PERMS3
    meta = FamilyMeta("Z/3", "N in {0, 1, 9}")

    def singular(self, p):
        if p["N"] in (0, 1, 9):
            return "singular when N = 0, 1, 9"

    def _ab(self, p):
        N = p["N"]
        return 6 * N, 36 * N * N * (N - 1)

    def curve(self, p):
        a, b = self._ab(p)
        return CurveQ(a * a, 2 * a * b, b * b)

    def candidates(self, p, P):
        N = p["N"]
        if P is None or P[0] == 0:
            return Rejection("torsion-trivial", "u = 0")
        u, v = P
        base = 36 * N * N * (1 - N)
        return _ab_s_candidates((base + v) / (6 * N * u), (base - v) / (6 * N * u))

    def verify(self, p, sol):
        a, b, c = sol
        cubes = a**3 + b**3 + c**3
        return cubes != 0 and (a + b + c) ** 3 == p["N"] * cubes

    def isogenies(self, p):
        N = p["N"]
        a, b = self._ab(p)
        printed = CurveQ(-3 * (18 * N) ** 2, -6 * 18 * N * 324 * N * N * (N - 9), -3 * (324 * N * N * (N - 9)) ** 2)
        return [match_model(isogeny3(self.curve(p), a, b), printed)]


@register
class Cubic321(Family):
    name = "c321"
    fields = ("a", "b", "c")
    description = "a^3 + b^3 + c^3 = N (a + b + c)(a^2 + b^2 + c^2)"
    homogeneous = True
    symmetry = ALL_PERMS3
    meta = FamilyMeta("Z/3", "3N = 1 or 8N^3 - 24N^2 + 27N - 9 = 0")

    def _K(self, p):
        N = p["N"]
        return 8 * N**3 - 24 * N * N + 27 * N - 9

    def singular(self, p):
        if 3 * p["N"] == 1 or self._K(p) == 0:
            return "singular when 3N = 1 or 8N^3 - 24N^2 + 27N - 9 = 0"

    def curve(self, p):
        a, b = 6 * (p["N"] - 1), 4 * self._K(p)
        return CurveQ(a * a, 2 * a * b, b * b)

    def candidates(self, p, P):
        N = p["N"]
        if P is None or P[0] == 0:
            return Rejection("torsion-trivial", "u = 0")
        u, v = P
        K = self._K(p)
        return _ab_s_candidates((v + 2 * N * u + 4 * K) / (6 * u), (-v + 2 * N * u + 4 * K) / (6 * u))

    def verify(self, p, sol):
        a, b, c = sol
        rhs = (a + b + c) * (a * a + b * b + c * c)
        return rhs != 0 and a**3 + b**3 + c**3 == p["N"] * rhs

    def isogenies(self, p):
        return [isogeny3(self.curve(p), 6 * (p["N"] - 1), 4 * self._K(p))]


@register
class FractionSum3(Family):
    name = "fr3"
    fields = ("a", "b", "c")
    description = "a/(b + c) + b/(c + a) + c/(a + b) = N"
    homogeneous = True
    symmetry = ALL_PERMS3
    meta = FamilyMeta("Z/6", "N in {-3, 3/2, -5/2}", "positive solutions need an egg point")

    def singular(self, p):
        if p["N"] in (-3, Fraction(3, 2), Fraction(-5, 2)):
            return "singular when N = -3, 3/2, -5/2"

    def curve(self, p):
        N = p["N"]
        return CurveQ(4 * N * N + 12 * N - 3, 32 * (N + 3), 0)

    def candidates(self, p, P):
        N = p["N"]
        if P is None or P[0] == 4:
            return Rejection("torsion-trivial", "u = 4 is a pole")
        u, v = P
        den = 2 * (N + 3) * (u - 4)
        return _ab_s_candidates((u + v - 8 * (N + 3)) / den, (u - v - 8 * (N + 3)) / den)

    def verify(self, p, sol):
        a, b, c = sol
        if (b + c) * (c + a) * (a + b) == 0:
            return False
        return a / (b + c) + b / (c + a) + c / (a + b) == p["N"]

    def status(self, p, sol):
        return "positive" if all(v > 0 for v in sol) else "signed"

    def isogenies(self, p):
        return [isogeny2(self.curve(p))]
