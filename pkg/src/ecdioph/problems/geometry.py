"""Pythagorean geometry: cuboid relaxations, unit-square tilings, magic squares of squares."""
from dataclasses import dataclass
from fractions import Fraction

from ..curve import CurveQ
from ..exactnum import primitive_integers
from .base import Family, FamilyMeta, Rejection, is_rational_square, quadratic_roots, register, tan_half


def _ratio_point(p, H, G):
    """(u, v) = (H/n^4, G/n^6) for a curve written with g = m/n cleared."""
    n = p["n"]
    return H / n**4, G / n**6


def _abs_primitive(sol):
    return tuple(Fraction(abs(v)) for v in primitive_integers(sol))


class _Cuboid(Family):
    params = ("m", "n")
    fields = ("L", "B", "H")
    homogeneous = True

    def singular(self, p):
        m, n = p["m"], p["n"]
        if m * n == 0 or m * m == n * n or self.curve(p).is_singular:
            return "degenerate when m n (m^2 - n^2) = 0 or the curve is singular"

    def normalize(self, sol):
        return _abs_primitive(sol) if any(sol) else tuple(Fraction(v) for v in sol)

    def _from_ef(self, e, f):
        if e == 0 or f == 0 or e * e == 1 or f * f == 1:
            return None
        return (Fraction(1), (1 - e * e) / (2 * e), (1 - f * f) / (2 * f))

    def candidates(self, p, P):
        m, n = p["m"], p["n"]
        if P is None or P[0] == 0:
            return Rejection("torsion-trivial", "f undefined")
        H, G = P
        f = G / (2 * m * n * H)
        if f == 0 or f * f == 1:
            return Rejection("torsion-trivial", "f = 0 or |f| = 1")
        out = [s for s in (self._from_ef(e, f) for e in self.e_roots(m / n, f)) if s]
        return out or Rejection("pole", "no usable e root")


@register
class CuboidBody(_Cuboid):
    name = "cuboid_body"
    description = "L^2 + B^2, L^2 + H^2, B^2 + H^2 all squares (space diagonal free)"
    symmetry = ((1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1))
    meta = FamilyMeta("Z/2+Z/4", "m n (m^2 - n^2) = 0")

    def curve(self, p):
        m, n = p["m"], p["n"]
        return CurveQ(-((m * m - n * n) ** 2) - (m**4 - 6 * m * m * n * n + n**4), (m * m - n * n) ** 2 * (m**4 - 6 * m * m * n * n + n**4), 0)

    def e_roots(self, g, f):
        return quadratic_roots(1, 2 * g * (f * f - 1) / (f * (g * g - 1)), -1)

    def verify(self, p, sol):
        L, B, H = sol
        return L * B * H != 0 and all(is_rational_square(s) for s in (L * L + B * B, L * L + H * H, B * B + H * H))

    def status(self, p, sol):
        L, B, H = sol
        return "perfect" if is_rational_square(L * L + B * B + H * H) else "irrational-space-diagonal"


@register
class CuboidFace(_Cuboid):
    name = "cuboid_face"
    description = "L^2 + B^2, L^2 + H^2, L^2 + B^2 + H^2 all squares (B^2 + H^2 free)"
    symmetry = ((0, 2, 1),)
    meta = FamilyMeta("Z/2+Z/4", "m n (m^2 - n^2) = 0")

    def curve(self, p):
        m, n = p["m"], p["n"]
        s, d = (m * m + n * n) ** 2, (m * m - n * n) ** 2
        return CurveQ(s + d, s * d, 0)

    def e_roots(self, g, f):
        return quadratic_roots(1, 2 * g * (f * f - 1) / (f * (1 - g * g)), 1)

    def verify(self, p, sol):
        L, B, H = sol
        return L * B * H != 0 and all(is_rational_square(s) for s in (L * L + B * B, L * L + H * H, L * L + B * B + H * H))

    def status(self, p, sol):
        L, B, H = sol
        return "perfect" if is_rational_square(B * B + H * H) else "irrational-face-diagonal"


@register
class CuboidSide(Family):
    name = "cuboid_side"
    params = ("f",)
    fields = ("L", "B", "H")
    description = "L^2 + B^2, L^2 + H, B^2 + H, L^2 + B^2 + H all squares (H is the squared side)"
    symmetry = ((1, 0, 2),)
    meta = FamilyMeta("Z/2+Z/2", "f in {0, 1, -1}")

    def singular(self, p):
        if p["f"] in (0, 1, -1):
            return "degenerate when f = 0, 1, -1"

    def curve(self, p):
        f2 = p["f"] ** 2
        return CurveQ(2 * (f2 + 1) ** 2, 4 * f2 * (f2 + 1) ** 2, 0)

    def _from_e(self, f, e):
        L, B = 2 * e, 1 - e * e
        cos, sin = (1 - f * f) / (1 + f * f), 2 * f / (1 + f * f)
        J = (B * cos - L) / sin
        return (L, B, J * J - L * L)

    def candidates(self, p, P):
        f = p["f"]
        if P is None:
            return Rejection("torsion-trivial", "point at infinity")
        u, v = P
        den = (f * f + 1) * (4 * f * f + u)
        if den == 0:
            return Rejection("pole", "u = -4 f^2")
        e = (f * f * u - u + v) / den
        if e == 0 or e * e == 1:
            return Rejection("torsion-trivial", "e = 0 or |e| = 1")
        return [self._from_e(f, e)]

    def verify(self, p, sol):
        L, B, H = sol
        return L * B * H != 0 and all(is_rational_square(s) for s in (L * L + B * B, L * L + H, B * B + H, L * L + B * B + H))

    def accept(self, p, P, sol):
        if sol[2] <= 0:
            return "non-positive-H"

    def status(self, p, sol):
        return "perfect" if is_rational_square(sol[2]) else "irrational-side"

    def normalize(self, sol):
        L, B, H = (Fraction(v) for v in sol)
        if L == 0 or B == 0:
            return (L, B, H)
        a, b = primitive_integers((abs(L), abs(B)))
        s = Fraction(a) / abs(L)
        return (Fraction(a), Fraction(b), H * s * s)

    def parametric(self, k):
        f = Fraction(k)
        f2 = f * f
        if f2 in (0, 1):
            raise ValueError("degenerate f")
        L = 4 * (f2 + 1) / (f2 - 1)
        B = (f2 + 3) * (3 * f2 + 1) / (f2 - 1) ** 2
        H = (f**4 + 8 * f**3 - 2 * f2 + 8 * f + 1) * (f**4 - 8 * f**3 - 2 * f2 - 8 * f + 1) / (4 * f2 * (f2 - 1) ** 2)
        return {"f": f}, (L, B, H)


SIDE_QUEST_CURVE = CurveQ(-8, 20, 0)
SIDE_QUEST_GENERATOR = (Fraction(2), Fraction(4))


def side_quest_w(P):
    """w = f^2 candidate from a point on v^2 = u^3 - 8u^2 + 20u (None at the pole)."""
    if P is None or P[0] == 80:
        return None
    u, v = P
    return (17 * u + 2 * v) / (u - 80)


def side_quest_scan(L):
    """(k, t, w, w is a square) for k G and k G + (0,0), |k| <= L."""
    E, G, T = SIDE_QUEST_CURVE, SIDE_QUEST_GENERATOR, (Fraction(0), Fraction(0))
    out = []
    for k in range(-L, L + 1):
        P = E.multiply(k, G)
        for t, Q in ((0, P), (1, E.add(P, T))):
            w = side_quest_w(Q)
            if w is not None:
                out.append((k, t, w, is_rational_square(w)))
    return out


# -- tilings of the unit square ------------------------------------------------


class _Tiling(Family):
    fields = ("X", "Y")

    def accept(self, p, P, sol):
        X, Y = sol
        if not (0 < X < 1 and 0 < Y < 1):
            return "unit-square"


@register
class TilingDelta(_Tiling):
    name = "tiling_delta"
    params = ("m", "n")
    description = "1 + Y^2, 1 + X^2, (1 - X)^2 + (1 - Y)^2 all squares"
    symmetry = ((1, 0),)
    meta = FamilyMeta("Z/2+Z/2", "m n (m + n)(m^2 + 2mn - n^2) = 0")

    def singular(self, p):
        m, n = p["m"], p["n"]
        if n == 0 or m == 0 or self.curve(p).is_singular:
            return "degenerate g or singular curve"

    def curve(self, p):
        m, n = p["m"], p["n"]
        r1, r2 = 2 * m * m * (m + n) ** 2, 2 * (m * m + n * n) * (m * m + 2 * m * n - n * n)
        return CurveQ(-(r1 + r2), r1 * r2, 0)

    def candidates(self, p, P):
        if P is None:
            return Rejection("torsion-trivial", "point at infinity")
        g = p["m"] / p["n"]
        u, v = _ratio_point(p, *P)
        den = 4 * g * (u - (g + 1) ** 2 * (g * g + 2 * g - 1))
        num = v - (g * g + 4 * g - 1) * u + 2 * g * (g + 1) ** 3 * (g * g + 2 * g - 1)
        if den == 0 or num == 0:
            return Rejection("pole", "z undefined or zero")
        f = 1 + den / num
        if f * f == 1 or f == 0:
            return Rejection("torsion-trivial", "f in {0, 1, -1}")
        qd = f * f * (g * g + 2 * g - 1) + 4 * f * g - g * g - 2 * g + 1
        if qd == 0:
            return Rejection("pole", "quadratic degenerate")
        out = []
        for e in quadratic_roots(1, 2 * (f * f - 1) * (g * g - 1) / qd, -1):
            if e * e != 1:
                out.append((tan_half(f), tan_half(e)))
        return out or Rejection("pole", "no usable e root")

    def verify(self, p, sol):
        X, Y = sol
        return all(is_rational_square(s) for s in (1 + Y * Y, 1 + X * X, (1 - X) ** 2 + (1 - Y) ** 2))


@register
class TilingNu(_Tiling):
    name = "tiling_nu"
    params = ("g",)
    description = "1 + Y^2, 1 + (1 - X)^2, 1 + (X - Y)^2 all squares"
    meta = FamilyMeta("Z/4", "g in {0, 1, -1}")

    def singular(self, p):
        g = p["g"]
        if g in (0, 1, -1) or self.curve(p).is_singular:
            return "degenerate g or singular curve"

    def curve(self, p):
        g = p["g"]
        return CurveQ(3 * g**4 + 4 * g**3 - 2 * g * g - 4 * g + 3, (g * g - 1) ** 4, 0)

    def candidates(self, p, P):
        if P is None:
            return Rejection("torsion-trivial", "point at infinity")
        g = p["g"]
        u, v = P
        den = 2 * (g * g - 1) * (u + (g * g - 1) ** 2)
        num = v - 2 * (g * g + g - 1) * u - (g * g - 1) ** 3
        if den == 0 or num == 0:
            return Rejection("pole", "h undefined or zero")
        f = 1 + den / num
        if f * f == 1 or f == 0:
            return Rejection("torsion-trivial", "f in {0, 1, -1}")
        k = g * g + 2 * g - 1
        qd = f * f * k + 2 * f * (g * g - 1) - k
        if qd == 0:
            return Rejection("pole", "quadratic degenerate")
        out = []
        for e in quadratic_roots(1, 2 * (f * f - 1) * (g * g - 1) / qd, -1):
            if e * e != 1:
                out.append((1 - tan_half(f), tan_half(e)))
        return out or Rejection("pole", "no usable e root")

    def verify(self, p, sol):
        X, Y = sol
        return all(is_rational_square(s) for s in (1 + Y * Y, 1 + (1 - X) ** 2, 1 + (X - Y) ** 2))


@register
class TilingKappa(_Tiling):
    name = "tiling_kappa"
    params = ("g",)
    description = "X^2 + Y^2, (1 - X)^2 + Y^2, (1 - X)^2 + (1 - Y)^2 all squares"
    meta = FamilyMeta("Z/4", "g = 0 or g^2 + 2g - 1 = 0")

    def singular(self, p):
        g = p["g"]
        if g == 0 or self.curve(p).is_singular:
            return "degenerate g or singular curve"

    def curve(self, p):
        g = p["g"]
        k = g * g + 2 * g - 1
        return CurveQ(g**4 + 4 * g**3 + 10 * g * g - 4 * g + 1, 4 * g * g * k * k, 0)

    def candidates(self, p, P):
        if P is None:
            return Rejection("torsion-trivial", "point at infinity")
        g = p["g"]
        u, v = P
        k = g * g + 2 * g - 1
        den = 2 * k * (u + 4 * g * g)
        num = v - (g * g + 4 * g - 1) * u - 4 * g * g * k
        if den == 0 or num == 0:
            return Rejection("pole", "z undefined or zero")
        f = 1 + den / num
        if f * f == 1 or f == 0:
            return Rejection("torsion-trivial", "f in {0, 1, -1}")
        qd = f * f * g + f * k - g
        if qd == 0:
            return Rejection("pole", "quadratic degenerate")
        out = []
        for e in quadratic_roots(1, 2 * g * (f * f - 1) / qd, -1):
            if e * e == 1 or e == 0:
                continue
            inv_y = tan_half(e) + tan_half(f)
            if inv_y == 0:
                continue
            Y = 1 / inv_y
            out.append((Y * tan_half(e), Y))
        return out or Rejection("pole", "no usable e root")

    def verify(self, p, sol):
        X, Y = sol
        return all(is_rational_square(s) for s in (X * X + Y * Y, (1 - X) ** 2 + Y * Y, (1 - X) ** 2 + (1 - Y) ** 2))

    def parametric_fe(self, g):
        """(f, e) from the point u = -(g^2 + 2g - 1)^2 with positive v."""
        g = Fraction(g)
        f = -(g**4 - 10 * g * g + 1) / (g**4 + 8 * g**3 + 6 * g * g - 8 * g + 1)
        e = (g**4 + 4 * g**3 - 10 * g * g - 4 * g + 1) / (g**4 + 4 * g**3 + 6 * g * g - 4 * g + 1)
        return f, e


@register
class TilingChi(Family):
    name = "tiling_chi"
    params = ("e", "f")
    fields = ("a", "b", "c", "d")
    description = "a^2 + c^2, a^2 + d^2, b^2 + c^2, b^2 + d^2 squares with a + b = c + d, all positive"
    homogeneous = True
    meta = FamilyMeta("Z/2+Z/2", "e or f in {0, 1, -1}")

    def singular(self, p):
        e, f = p["e"], p["f"]
        if e in (0, 1, -1) or f in (0, 1, -1) or self.curve(p).is_singular:
            return "degenerate e, f or singular curve"

    def curve(self, p):
        e, f = p["e"], p["f"]
        r1, r2 = 4 * e * e * (f * f - 1) ** 2, 4 * f * f * (e * e - 1) ** 2
        return CurveQ(r1 + r2, r1 * r2, 0)

    def candidates(self, p, P):
        if P is None:
            return Rejection("torsion-trivial", "point at infinity")
        e, f = p["e"], p["f"]
        w, v = P
        den = 2 * e * (f * f - 1) * (w + 4 * f * f * (e * e - 1) ** 2)
        if den == 0:
            return Rejection("pole", "g undefined")
        g = v / den
        if g == 0 or g * g == 1:
            return Rejection("torsion-trivial", "g in {0, 1, -1}")
        c, d = tan_half(e), tan_half(f)
        b = c / tan_half(g)
        return [(Fraction(1), b, c, d)]

    def verify(self, p, sol):
        a, b, c, d = sol
        return a * b * c * d != 0 and all(is_rational_square(s) for s in (a * a + c * c, a * a + d * d, b * b + c * c, b * b + d * d))

    def accept(self, p, P, sol):
        if not self.is_tiling(sol):
            return "not-a-tiling"

    def is_tiling(self, sol):
        a, b, c, d = sol
        return min(sol) > 0 and a + b == c + d

    def defect(self, sol):
        """|(a + b)/(c + d) - 1|, the distance from a chi tiling."""
        a, b, c, d = (abs(v) for v in sol)
        return abs((a + b) / (c + d) - 1)

    def normalize(self, sol):
        return _abs_primitive(sol) if any(sol) else tuple(Fraction(v) for v in sol)


# -- magic square of squares ---------------------------------------------------


def magic_entries(a, b, c):
    """The 3 x 3 magic square with centre a, as rows."""
    return ((a + b, a - b - c, a + c), (a - b + c, a, a + b - c), (a - c, a + b + c, a - b))


@dataclass(frozen=True)
class MagicCount:
    count: int
    entries: tuple
    distinct: bool


def count_magic_squares(a, b, c):
    rows = magic_entries(Fraction(a), Fraction(b), Fraction(c))
    flat = [v for row in rows for v in row]
    count = sum(1 for v in flat if v >= 0 and is_rational_square(v))
    return MagicCount(count, rows, len(set(flat)) == 9)


@register
class MagicSquare(Family):
    name = "magic_square"
    params = ("m", "n")
    fields = ("a", "b", "c")
    description = "a + b, a - b, a + c, a - c, a + b + c, a - b - c all squares"
    meta = FamilyMeta("Z/2+Z/4", "m n (m^2 - n^2) = 0")

    def singular(self, p):
        m, n = p["m"], p["n"]
        if m * n == 0 or m * m == n * n or self.curve(p).is_singular:
            return "degenerate g or singular curve"

    def _T(self, m, n):
        return (m * m + 4 * m * n + n * n) ** 2 * (m * m - 4 * m * n + n * n) ** 2

    def curve(self, p):
        m, n = p["m"], p["n"]
        return CurveQ(2 * (m**4 + 18 * m * m * n * n + n**4), self._T(m, n), 0)

    def f_of(self, p, P):
        m, n = p["m"], p["n"]
        z, w = P
        T = self._T(m, n)
        num = -(m * m + n * n) * w - (m**4 + 8 * m**3 * n + 2 * m * m * n * n - 8 * m * n**3 + n**4) * z - T
        den = -(m * m + n * n) * w + (m**4 - 8 * m**3 * n + 2 * m * m * n * n + 8 * m * n**3 + n**4) * z + T
        return None if den == 0 else num / den

    def from_fg(self, f, g):
        """(a, b, c) as integers from the rotation parameters f, g (empty if no rational p/q)."""
        cf, sf = (1 - f * f) / (1 + f * f), 2 * f / (1 + f * f)
        cg, sg = (1 - g * g) / (1 + g * g), 2 * g / (1 + g * g)

        def form(p, q):
            r, s = p * cf + q * sf, -p * sf + q * cf
            u, v = p * cg + q * sg, -p * sg + q * cg
            return u * u - v * v - (p * p - q * q + r * r - s * s)

        A, C = form(1, 0), form(0, 1)
        B = form(1, 1) - A - C
        out = []
        for t in quadratic_roots(A, B, C):
            p, q = (Fraction(v) for v in primitive_integers((t, 1)))
            r, s = p * cf + q * sf, -p * sf + q * cf
            a, b, c = (p * p + q * q) / 2, (p * p - q * q) / 2, (r * r - s * s) / 2
            out.append(self.normalize((a, b, c)))
        return out

    def candidates(self, p, P):
        if P is None:
            return Rejection("torsion-trivial", "point at infinity")
        f = self.f_of(p, P)
        if f is None or f * f == 1 or f == 0:
            return Rejection("torsion-trivial", "f undefined or in {0, 1, -1}")
        return self.from_fg(f, p["m"] / p["n"]) or Rejection("pole", "no rational p/q")

    def normalize(self, sol):
        # scale by a square so that a, b, c are coprime integers
        a, b, c = (Fraction(v) for v in sol)
        if not any((a, b, c)):
            return (a, b, c)
        den = 1
        for v in (a, b, c):
            den = den * v.denominator // _gcd(den, v.denominator)
        k = _square_cover(den)
        ints = [int(v * k * k) for v in (a, b, c)]
        g = 0
        for v in ints:
            g = _gcd(g, v)
        s = _largest_square_divisor(g)
        return tuple(Fraction(v, s) for v in ints)

    def extra_variants(self, sol, p):
        # reflections and the half turn of the square: (b, c) -> (c, b), (-b, -c), (-c, -b)
        a, b, c = sol
        return [(a, b, c), (a, c, b), (a, -b, -c), (a, -c, -b)]

    def verify(self, p, sol):
        a, b, c = sol
        vals = (a + b, a - b, a + c, a - c, a + b + c, a - b - c)
        return all(v >= 0 and is_rational_square(v) for v in vals)

    def status(self, p, sol):
        return f"{count_magic_squares(*sol).count} squares"


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


def _square_cover(n):
    """Smallest k with n | k^2."""
    from ..exactnum import factorize

    k = 1
    for q, e in factorize(n).items():
        k *= q ** (-(-e // 2))
    return k


def _largest_square_divisor(n):
    from ..exactnum import squarefree_decompose

    return squarefree_decompose(abs(n))[1] ** 2 if n else 1
