"""Weierstrass curves v^2 = u^3 + a2 u^2 + a4 u + a6 over Q.

Points are ``(x, y)`` tuples of Fractions; ``None`` is the point at infinity.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .exactnum import rational_roots, rational_square_root

INF = None


class NotOnCurve(ValueError):
    pass


class SingularCurve(ValueError):
    pass


def _q(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def point(x, y):
    return (_q(x), _q(y))


def cubic_discriminant(a, b, c):
    """Discriminant of x^3 + a x^2 + b x + c."""
    return a * a * b * b - 4 * b**3 - 4 * a**3 * c - 27 * c * c + 18 * a * b * c


@dataclass(frozen=True)
class CurveQ:
    a2: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a6: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a2", "a4", "a6"):
            object.__setattr__(self, name, _q(getattr(self, name)))

    @property
    def coeffs(self):
        return (self.a2, self.a4, self.a6)

    def __str__(self):
        from .exactnum import fmt_rational as fr

        return f"y^2 = x^3 + ({fr(self.a2)})x^2 + ({fr(self.a4)})x + ({fr(self.a6)})"

    def rhs(self, x):
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def contains(self, P):
        return P is None or P[1] * P[1] == self.rhs(P[0])

    @cached_property
    def discriminant(self):
        # 16 times the discriminant of the cubic: 16 * prod (e_i - e_j)^2
        return 16 * cubic_discriminant(*self.coeffs)

    @property
    def is_singular(self):
        return self.discriminant == 0

    def require_nonsingular(self):
        if self.is_singular:
            raise SingularCurve(f"singular curve {self}")

    @cached_property
    def short_form(self):
        """(A, B) with X = x + a2/3 giving Y^2 = X^3 + A X + B."""
        a2, a4, a6 = self.coeffs
        return (a4 - a2 * a2 / 3, a6 - a2 * a4 / 3 + 2 * a2**3 / 27)

    @cached_property
    def j_invariant(self):
        A, B = self.short_form
        den = 4 * A**3 + 27 * B * B
        if den == 0:
            raise SingularCurve("singular curve has no j-invariant")
        return 1728 * 4 * A**3 / den

    # -- group law -------------------------------------------------------
    def neg(self, P):
        return None if P is None else (P[0], -P[1])

    def _add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y1 != y2 or y1 == 0:
                return None
            lam = (3 * x1 * x1 + 2 * self.a2 * x1 + self.a4) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - self.a2 - x1 - x2
        return (x3, lam * (x1 - x3) - y1)

    def add(self, P, Q):
        for R in (P, Q):
            if not self.contains(R):
                raise NotOnCurve(f"{R} is not on {self}")
        return self._add(P, Q)

    def sub(self, P, Q):
        return self.add(P, self.neg(Q))

    def double(self, P):
        return self.add(P, P)

    def multiply(self, k, P):
        if not self.contains(P):
            raise NotOnCurve(f"{P} is not on {self}")
        if k < 0:
            return self.multiply(-k, self.neg(P))
        acc, base = None, P
        while k:
            if k & 1:
                acc = self._add(acc, base)
            base = self._add(base, base)
            k >>= 1
        return acc

    def lift_x(self, x):
        """All affine points with the given x-coordinate (0, 1 or 2 of them)."""
        x = _q(x)
        r = rational_square_root(self.rhs(x))
        if r is None:
            return []
        return [(x, r)] if r == 0 else [(x, r), (x, -r)]

    def two_torsion(self):
        return [(r, Fraction(0)) for r in sorted(rational_roots([1, *self.coeffs]))]

    # -- coordinate changes ------------------------------------------------
    def translate(self, r):
        """Curve in x' = x - r."""
        r = _q(r)
        a2, a4, _ = self.coeffs
        return CurveQ(a2 + 3 * r, 3 * r * r + 2 * a2 * r + a4, self.rhs(r))

    def scale(self, u):
        """Curve in x' = x/u^2, y' = y/u^3."""
        u = _q(u)
        return CurveQ(self.a2 / u**2, self.a4 / u**4, self.a6 / u**6)

    # -- real structure ----------------------------------------------------
    def real_components(self):
        self.require_nonsingular()
        return 2 if self.discriminant > 0 else 1

    def component_of(self, P):
        """'egg' or 'infinite'.

        With three real roots e1 < e2 < e3 the egg is [e1, e2]; it sits left of
        the larger critical point c2 of the cubic, while [e3, oo) sits right of
        it. Comparing x with c2 = (-a2 + sqrt(a2^2 - 3 a4))/3 needs one exact
        square comparison.
        """
        if P is None:
            return "infinite"
        if not self.contains(P):
            raise NotOnCurve(f"{P} is not on {self}")
        if self.real_components() == 1:
            return "infinite"
        lhs = 3 * P[0] + self.a2
        disc = self.a2 * self.a2 - 3 * self.a4
        if lhs < 0 or lhs * lhs < disc:
            return "egg"
        return "infinite"


def isomorphism(E1, E2):
    """(u, r) with (x, y) on E1 -> ((x - r)/u^2, y/u^3) on E2, or None."""
    A1, B1 = E1.short_form
    A2, B2 = E2.short_form
    if (A1 == 0) != (A2 == 0) or (B1 == 0) != (B2 == 0):
        return None
    if A1 != 0 and B1 != 0:
        u2 = (B1 * A2) / (B2 * A1)
    elif A1 != 0:
        u2 = rational_square_root(A1 / A2)
        if u2 is None:
            # u^4 = A1/A2 may also hold with u^2 negative: not over Q
            return None
    elif B1 != 0:
        u6 = B1 / B2
        u2 = _rational_cube_root(u6)
        if u2 is None:
            return None
    else:
        u2 = Fraction(1)
    u = rational_square_root(u2)
    if u is None or u == 0:
        return None
    r = (u2 * E2.a2 - E1.a2) / 3
    if E1.translate(r).scale(u) != E2:
        return None
    return (u, r)


def apply_isomorphism(iso, P):
    if P is None:
        return None
    u, r = iso
    return ((P[0] - r) / u**2, P[1] / u**3)


def invert_isomorphism(iso, P):
    if P is None:
        return None
    u, r = iso
    return (P[0] * u**2 + r, P[1] * u**3)


def _rational_cube_root(q):
    from .exactnum import integer_roots

    q = Fraction(q)
    out = []
    for part in (q.numerator, q.denominator):
        roots = integer_roots([1, 0, 0, -part])
        if not roots:
            return None
        out.append(roots.pop())
    return Fraction(out[0], out[1])


def doubling_x_square_rule(E, P):
    """x(2P) = (p^2 - B)^2 / (4 q^2) on v^2 = w^3 + A w^2 + B w."""
    if E.a6 != 0:
        raise ValueError("curve must have the form v^2 = w^3 + A w^2 + B w")
    if P is None or P[1] == 0:
        raise ValueError("2P is infinity")
    p, q = P
    return (p * p - E.a4) ** 2 / (4 * q * q)


def halving_quartic(E, P):
    """Coefficients (highest first) of the quartic whose roots are x(Q) for 2Q = P."""
    a2, a4, a6 = E.coeffs
    x0 = P[0]
    return [1, -4 * x0, -(2 * a4 + 4 * x0 * a2), -(8 * a6 + 4 * x0 * a4), a4 * a4 - 4 * a2 * a6 - 4 * x0 * a6]


def halve_point(E, P):
    """All rational Q with 2Q = P (empty when P is not a double)."""
    from .exactnum import rational_roots

    if P is None:
        return [None] + [T for T in E.two_torsion()]
    out = []
    for x in sorted(rational_roots(halving_quartic(E, P))):
        for Q in E.lift_x(x):
            if E.double(Q) == P:
                out.append(Q)
    return out


@dataclass(frozen=True)
class GeneralCurveQ:
    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a6: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, _q(getattr(self, name)))

    def contains(self, P):
        if P is None:
            return True
        x, y = P
        return y * y + self.a1 * x * y + self.a3 * y == x**3 + self.a2 * x * x + self.a4 * x + self.a6


def simplify(C):
    """Complete the square: returns (E, to_E, from_E) with u = 4x, v = 4(2y + a1 x + a3)."""
    a1, a2, a3, a4, a6 = C.a1, C.a2, C.a3, C.a4, C.a6
    E = CurveQ(4 * a2 + a1 * a1, 4 * (4 * a4 + 2 * a1 * a3), 16 * (4 * a6 + a3 * a3))

    def to_E(P):
        if P is None:
            return None
        x, y = P
        return (4 * x, 4 * (2 * y + a1 * x + a3))

    def from_E(P):
        if P is None:
            return None
        u, v = P
        x = u / 4
        return (x, (v / 4 - a1 * x - a3) / 2)

    return E, to_E, from_E
