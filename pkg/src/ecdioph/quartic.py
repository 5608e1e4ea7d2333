"""Birational reduction of quartics y^2 = q(x) to Weierstrass form."""
from dataclasses import dataclass
from fractions import Fraction

from .curve import CurveQ
from .exactnum import rational_square_root
from .ratfunc import Poly, RatFunc, RationalMap, Rejection, X, Y


class DegenerateQuartic(ValueError):
    pass


def _q(v):
    return v if isinstance(v, Fraction) else Fraction(v)


def _poly_sqrt(coeffs):
    """Square root of a polynomial (highest first) with rational coefficients, or None."""
    coeffs = list(coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if not coeffs:
        return []
    n = len(coeffs) - 1
    if n % 2:
        return None
    lead = rational_square_root(coeffs[0])
    if lead is None:
        return None
    m = n // 2
    root = [lead] + [Fraction(0)] * m
    for k in range(1, m + 1):
        acc = coeffs[k] - sum(root[i] * root[k - i] for i in range(1, k))
        root[k] = acc / (2 * lead)
    square = [Fraction(0)] * (n + 1)
    for i, a in enumerate(root):
        for j, b in enumerate(root):
            square[i + j] += a * b
    return root if square == coeffs else None


@dataclass(frozen=True)
class QuarticModel:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction
    known_point: tuple = None

    def __post_init__(self):
        for name in "abcde":
            object.__setattr__(self, name, _q(getattr(self, name)))
        if self.known_point is not None:
            object.__setattr__(self, "known_point", (_q(self.known_point[0]), _q(self.known_point[1])))
        if _poly_sqrt(self.coeffs) is not None:
            raise DegenerateQuartic("quartic is identically a perfect square")
        if self.known_point is not None and not self.contains(self.known_point):
            raise ValueError(f"known point {self.known_point} is not on the quartic")

    @property
    def coeffs(self):
        return (self.a, self.b, self.c, self.d, self.e)

    def __call__(self, x):
        a, b, c, d, e = self.coeffs
        return (((a * x + b) * x + c) * x + d) * x + e

    def contains(self, P):
        return P[1] * P[1] == self(P[0])

    def poly(self):
        a, b, c, d, e = self.coeffs
        return a * X**4 + b * X**3 + c * X**2 + d * X + e

    def __str__(self):
        return f"y^2 = {self.poly().to_str()}"


@dataclass(frozen=True)
class BirationalMap:
    """forward: quartic (x, y) -> curve (H, G); reverse: curve -> quartic."""

    quartic: QuarticModel
    curve: CurveQ
    forward: RationalMap
    reverse: RationalMap

    def poles(self):
        return {"forward": self.forward.poles(), "reverse": self.reverse.poles()}

    def describe(self):
        return self.forward.describe(("H", "G")) + self.reverse.describe(("x", "y"))


def apply_map(bmap, direction, value):
    """Exact evaluation of a BirationalMap; Rejection at poles."""
    if direction not in ("forward", "reverse"):
        raise ValueError("direction must be 'forward' or 'reverse'")
    fn = bmap.forward if direction == "forward" else bmap.reverse
    return fn(value)


def scale_leading_square(q):
    """y^2 = alpha^2 x^4 + ... rewritten monic in (X, Y) = (alpha x, alpha y)."""
    alpha = rational_square_root(q.a)
    if alpha is None or alpha == 0:
        raise ValueError("leading coefficient is not a nonzero rational square; use reduce_with_point")
    kp = None
    if q.known_point is not None:
        kp = (alpha * q.known_point[0], alpha * q.known_point[1])
    return QuarticModel(1, q.b / alpha, q.c, alpha * q.d, alpha * alpha * q.e, kp), alpha


def _mordell(b, c, d, e):
    A = 27 * (3 * b * d - c * c - 12 * e)
    B = 27 * (27 * b * b * e - 9 * b * c * d + 2 * c**3 - 72 * c * e + 27 * d * d)
    return CurveQ(0, A, B)


def reduce_monic(q):
    """Mordell's reduction for a monic (or square-leading) quartic.

    Returns (curve, BirationalMap, builtin_points) where builtin_points are the
    two images (H0, +-G0) of the points at infinity of the quartic.
    """
    mq, alpha = scale_leading_square(q)
    _, b, c, d, e = mq.coeffs
    E = _mordell(b, c, d, e)
    # forward on the monic model, then substitute (X, Y) = (alpha x, alpha y)
    H = 18 * X**2 + 9 * b * X + 3 * c - 18 * Y
    G = (X * (12 * H - 9 * (3 * b * b - 8 * c)) + 3 * b * H - 9 * (b * c - 6 * d)) * Fraction(1, 2)
    H, G = H.scale_vars(alpha, alpha), G.scale_vars(alpha, alpha)
    # reverse: (H, G) -> (x, y)
    xm = RatFunc(2 * Y - 3 * b * X + 9 * (b * c - 6 * d), 12 * X - 9 * (3 * b * b - 8 * c))
    ym = (18 * xm * xm + 9 * b * xm + 3 * c - X) / 18
    H0 = Fraction(3) * (3 * b * b - 8 * c) / 4
    G0 = Fraction(27) * (b**3 - 4 * b * c + 8 * d) / 8
    builtin = [(H0, G0), (H0, -G0)] if G0 else [(H0, G0)]
    fwd = RationalMap(RatFunc(H), RatFunc(G), ("x", "y"))
    rev = RationalMap(xm / alpha, ym / alpha, ("H", "G"))
    return E, BirationalMap(q, E, fwd, rev), builtin


def reduce_with_point(q, p0=None):
    """Reduction through a known rational point (p, r) with r != 0.

    z = 1/(x - p), u = r^2 z makes the quartic monic in u; completing the
    square v^2 = (u^2 + m u + n)^2 + s u + t then gives
    G^2 = X^3 + (m^2 - 4n) X^2 + (2ms - 4t) X + s^2.
    The seed (p, r) maps to infinity and (p, -r) to (0, -s).
    """
    if p0 is None:
        p0 = q.known_point
    if p0 is None:
        raise ValueError("reduce_with_point needs a rational point")
    p, r = _q(p0[0]), _q(p0[1])
    if not q.contains((p, r)):
        raise ValueError(f"{(p, r)} is not on the quartic")
    if r == 0:
        raise ValueError("point has y = 0: use shifted reduction")
    a, b, c, d, e = q.coeffs
    f = 4 * a * p**3 + 3 * b * p * p + 2 * c * p + d
    g = r * r * (6 * a * p * p + 3 * b * p + c)
    h = r**4 * (4 * a * p + b)
    k = a * r**6
    m = f / 2
    n = (4 * g - f * f) / 8
    s = (f**3 - 4 * f * g + 8 * h) / 8
    t = -(f**4 - 8 * f * f * g + 16 * (g * g - 4 * k)) / 64
    E = CurveQ(m * m - 4 * n, 2 * m * s - 4 * t, s * s)
    if E.is_singular:
        raise DegenerateQuartic("reduction produced a singular curve")
    D = X - p
    inner = r**3 * Y + r**4 + m * r * r * D + n * D * D  # Z * D^2
    Zf = RatFunc(inner, D * D)
    Xf = 2 * Zf
    Yf = RatFunc(4 * r * r * inner, D**3)
    Gf = Yf + s + m * Xf
    Yc = Y - s - m * X  # curve variables (X, G) are named X, Y here
    xr = RatFunc(p * Yc + 2 * r * r * X, Yc)
    yr = RatFunc(r * (2 * X**3 - Yc * Yc - 2 * m * X * Yc - 4 * n * X * X), Yc * Yc)
    fwd = RationalMap(Xf, Gf, ("x", "y"), special=(((p, r), None), ((p, -r), (Fraction(0), -s))))
    rev = RationalMap(xr, yr, ("X", "G"), special=((None, (p, r)), ((Fraction(0), -s), (p, -r))))
    return E, BirationalMap(q, E, fwd, rev)


def reduce_biquadratic(a, c, e):
    """y^2 = a x^4 + c x^2 + e  ->  F^2 = H^3 - 2c H^2 + (c^2 - 4ae) H.

    Needs a or e to be a rational square (the map then goes through a point
    at infinity or at x = 0).
    """
    a, c, e = _q(a), _q(c), _q(e)
    quart = QuarticModel(a, 0, c, 0, e)
    if c * c == 4 * a * e:
        raise DegenerateQuartic("c^2 = 4ae: the curve is singular")
    E = CurveQ(-2 * c, c * c - 4 * a * e, 0)
    alpha = rational_square_root(a) if a else None
    if alpha:
        T = 2 * a * X**2 + c - 2 * alpha * Y
        S = 2 * alpha * X * T
        xr = RatFunc(Y, 2 * alpha * X)
        Xs = RatFunc(Y, 2 * X)
        yr = (2 * Xs * Xs + c - X) / (2 * alpha)
        fwd = RationalMap(RatFunc(T), RatFunc(S), ("x", "y"))
        rev = RationalMap(xr, yr, ("H", "F"))
        return E, BirationalMap(quart, E, fwd, rev)
    eps = rational_square_root(e) if e else None
    if eps:
        # x -> 1/x swaps the roles of a and e
        T = RatFunc(2 * e + c * X**2 - 2 * eps * Y, X**2)
        S = RatFunc(2 * eps * (2 * e + c * X**2 - 2 * eps * Y), X**3)
        Zs = RatFunc(Y, 2 * X)  # Z = eps / x
        xr = eps / Zs
        Ys = (2 * Zs * Zs + c - X) / 2
        yr = eps * Ys / (Zs * Zs)
        zero = (Fraction(0), Fraction(0))
        fwd = RationalMap(T, S, ("x", "y"), special=(((Fraction(0), eps), zero), ((Fraction(0), -eps), None)))
        rev = RationalMap(xr, yr, ("H", "F"), special=((zero, (Fraction(0), eps)), (None, (Fraction(0), -eps))))
        return E, BirationalMap(quart, E, fwd, rev)
    raise ValueError("neither a nor e is a rational square; use reduce_with_point")
