"""Isogenies: Velu's formulas and explicit 2-, 3-, 4-isogenies.

An IsogenyMap is a chain of rational maps (Weierstrass changes of variable
and isogeny steps). Each step's first coordinate depends on x only, which is
what the pull-back uses: multiply by the degree on the target, then solve the
x-equation step by step and keep rational roots.
"""
from dataclasses import dataclass
from fractions import Fraction

from .curve import CurveQ, isomorphism
from .exactnum import rational_roots, rational_square_root
from .ratfunc import Poly, RatFunc, RationalMap, Rejection, X, Y


@dataclass(frozen=True)
class Step:
    source: CurveQ
    target: CurveQ
    degree: int
    map: RationalMap
    tag: str


@dataclass(frozen=True)
class IsogenyMap:
    source: CurveQ
    target: CurveQ
    degree: int
    steps: tuple
    tag: str = ""

    def push(self, P):
        for st in self.steps:
            if P is None:
                return None
            Q = st.map(P)
            if isinstance(Q, Rejection):
                # denominators vanish exactly on the kernel
                return None if st.degree > 1 else Q
            P = Q
        return P

    def push_or_reject(self, P):
        """Like push, but report kernel points as a Rejection."""
        for st in self.steps:
            if P is None:
                return None
            Q = st.map(P)
            if isinstance(Q, Rejection):
                return Rejection("kernel", f"{P} lies in the kernel of the {st.tag} step")
            P = Q
        return P

    def pull_back(self, P, multiply=True):
        """Source points Q with push(Q) = degree * P (all rational candidates)."""
        R = self.target.multiply(self.degree, P) if multiply else P
        layer = [R]
        for st in reversed(self.steps):
            nxt = []
            for R in layer:
                nxt += preimages(st, R)
            layer = _dedupe(nxt)
        return layer

    def describe(self):
        out = []
        for st in self.steps:
            out.append(f"[{st.tag}, degree {st.degree}] {st.source} -> {st.target}")
            out += ["    " + line for line in st.map.describe(("x'", "y'"))]
        return out


def _dedupe(points):
    seen, out = set(), []
    for P in points:
        key = ("inf",) if P is None else P
        if key not in seen:
            seen.add(key)
            out.append(P)
    return out


def preimages(step, R):
    """Rational points Q on step.source with step(Q) = R."""
    if R is None:
        # kernel points plus infinity: only infinity is reported for changes of variable
        if step.degree == 1:
            return [None]
        out = [None]
        num, den = step.map.first.num, step.map.first.den
        for x0 in rational_roots(den.coeffs_in(0)):
            for Q in step.source.lift_x(x0):
                out.append(Q)
        return out
    f = step.map.first
    poly = f.num - R[0] * f.den
    if poly.is_zero():
        return []
    coeffs = poly.coeffs_in(0)
    out = []
    for x0 in sorted(rational_roots(coeffs)):
        for Q in step.source.lift_x(x0):
            if step.map(Q) == R:
                out.append(Q)
    return out


def _chain(source, steps, tag):
    deg = 1
    for st in steps:
        deg *= st.degree
    return IsogenyMap(source, steps[-1].target if steps else source, deg, tuple(steps), tag)


def change_step(E, u, r):
    """Weierstrass change x' = (x - r)/u^2, y' = y/u^3 as a Step."""
    u, r = Fraction(u), Fraction(r)
    target = E.translate(r).scale(u)
    m = RationalMap(RatFunc((X - r) * (1 / u**2)), RatFunc(Y * (1 / u**3)), ("x", "y"))
    return Step(E, target, 1, m, "change")


def identity(E):
    return IsogenyMap(E, E, 1, (), "identity")


def compose(*maps):
    """Chain maps left to right: compose(f, g) applies f first, then g."""
    maps = [m for m in maps]
    if not maps:
        raise ValueError("nothing to compose")
    for f, g in zip(maps, maps[1:]):
        if f.target != g.source:
            raise ValueError(f"mismatched chain: {f.target} vs {g.source}")
    steps = [st for m in maps for st in m.steps]
    return _chain(maps[0].source, steps, "∘".join(m.tag for m in reversed(maps) if m.tag))


def velu(E, kernel_half):
    """Target of the Velu isogeny with kernel generated by T* (see velu_map)."""
    return velu_map(E, kernel_half).target


def velu_map(E, kernel_half):
    """Velu's formulas for y^2 = x^3 + a x^2 + b x + c.

    kernel_half holds every order-2 kernel point and one point from each
    +-pair of the remaining kernel points.
    """
    a, b, c = E.coeffs
    t = w = Fraction(0)
    uu = RatFunc(X)
    vv = RatFunc(Y)
    deg = 1
    for P in kernel_half:
        if P is None or not E.contains(P):
            raise ValueError(f"kernel point {P} invalid")
        r, s = P
        gr = 3 * r * r + 2 * a * r + b
        hs = -2 * s
        delta = 1 if s == 0 else 2
        deg += delta
        tP = delta * gr
        uP = hs * hs
        wP = uP + r * tP
        t += tP
        w += wP
        D = X - r
        uu = uu + RatFunc(tP * D + uP, D * D)
        vv = vv - RatFunc(2 * uP * Y + tP * (Y - s) * D - gr * hs * D, D**3)
    target = CurveQ(a, b - 5 * t, c - 4 * a * t - 7 * w)
    m = RationalMap(uu, vv, ("x", "y"))
    return _chain(E, [Step(E, target, deg, m, f"velu-{deg}")], f"velu-{deg}")


def isogeny2(E):
    """2-isogeny of y^2 = x^3 + a x^2 + b x with kernel (0, 0)."""
    if E.a6 != 0:
        raise ValueError("isogeny2 needs a6 = 0 (kernel point at the origin)")
    a, b = E.a2, E.a4
    target = CurveQ(-2 * a, a * a - 4 * b, 0)
    h = RatFunc(X * X + a * X + b, X)
    v = RatFunc(Y * (X * X - b), X * X)
    st = Step(E, target, 2, RationalMap(h, v, ("x", "y")), "2-isogeny")
    return _chain(E, [st], "2-isogeny")


def _ab_for_isogeny3(E):
    b = rational_square_root(E.a6)
    if not b:
        raise ValueError("isogeny3 needs y^2 = x^3 + (a x + b)^2 with b != 0")
    a = E.a4 / (2 * b)
    if a * a != E.a2:
        raise ValueError("curve is not of the form y^2 = x^3 + (a x + b)^2")
    return a, b


def isogeny3(E, a=None, b=None):
    """3-isogeny of y^2 = x^3 + (a x + b)^2 with kernel {(0, +-b)}."""
    if a is None or b is None:
        a, b = _ab_for_isogeny3(E)
    a, b = Fraction(a), Fraction(b)
    if E != CurveQ(a * a, 2 * a * b, b * b):
        raise ValueError("curve does not match y^2 = x^3 + (a x + b)^2")
    k = 27 * b - 4 * a**3
    target = CurveQ(-27 * a * a, -54 * a * k, -27 * k * k)
    h = RatFunc(3 * (3 * X**3 + 4 * a * a * X**2 + 12 * a * b * X + 12 * b * b), X**2)
    g = RatFunc(27 * Y * (X**3 - 4 * a * b * X - 8 * b * b), X**3)
    st = Step(E, target, 3, RationalMap(h, g, ("x", "y")), "3-isogeny")
    return _chain(E, [st], "3-isogeny")


def isogeny4(E, a=None, b=None):
    """4-isogeny of y^2 = x^3 + (a^2 + 2b) x^2 + b^2 x with kernel <(-b, ab)>."""
    if a is None or b is None:
        if E.a6 != 0:
            raise ValueError("isogeny4 needs a6 = 0")
        rb = rational_square_root(E.a4)
        found = None
        for bb in ((rb, -rb) if rb else ()):
            aa = rational_square_root(E.a2 - 2 * bb)
            if aa is not None:
                found = (aa, bb)
                break
        if found is None:
            raise ValueError("curve is not of the form y^2 = x^3 + (a^2 + 2b) x^2 + b^2 x")
        a, b = found
    a, b = Fraction(a), Fraction(b)
    if E != CurveQ(a * a + 2 * b, b * b, 0):
        raise ValueError("curve does not match y^2 = x^3 + (a^2 + 2b) x^2 + b^2 x")
    target = CurveQ(2 * (4 * b - a * a), (a * a + 4 * b) ** 2, 0)
    h = RatFunc((X - b) ** 2 * (X * X + (a * a + 2 * b) * X + b * b), X * (X + b) ** 2)
    quart = X**4 + 4 * b * X**3 + 2 * b * (2 * a * a + 3 * b) * X**2 + 4 * b**3 * X + b**4
    v = RatFunc(Y * (X - b) * quart, X**2 * (X + b) ** 3)
    st = Step(E, target, 4, RationalMap(h, v, ("x", "y")), "4-isogeny")
    return _chain(E, [st], "4-isogeny")


def two_isogeny_at(E, T):
    """2-isogeny with kernel {O, T} for a rational 2-torsion point T = (r, 0)."""
    if T is None or T[1] != 0 or not E.contains(T):
        raise ValueError("T must be a rational point of order 2")
    ch = _chain(E, [change_step(E, 1, T[0])], "")
    return compose(ch, isogeny2(ch.target))


def three_isogeny_at(E, P):
    """3-isogeny with kernel generated by an inflection point P = (x0, y0)."""
    x0, y0 = P
    ch = _chain(E, [change_step(E, 1, x0)], "")
    F = ch.target
    if y0 == 0:
        raise ValueError("order-3 point cannot have y = 0")
    a = F.a4 / (2 * y0)
    if a * a != F.a2 or F.a6 != y0 * y0:
        raise ValueError(f"{P} is not a point of order 3")
    return compose(ch, isogeny3(F, a, y0))


def four_isogeny_at(E, P):
    """4-isogeny with kernel <P>, P of order 4; 2P is moved to the origin."""
    P2 = E.multiply(2, P)
    if P2 is None or P2[1] != 0:
        raise ValueError("P must have order 4")
    ch = _chain(E, [change_step(E, 1, P2[0])], "")
    F = ch.target
    b = -(P[0] - P2[0])
    aa = F.a2 - 2 * b
    a = rational_square_root(aa)
    if a is None or F.a4 != b * b:
        raise ValueError("translated curve is not of the form x^3 + (a^2 + 2b) x^2 + b^2 x")
    return compose(ch, isogeny4(F, a, b))


def match_model(imap, E):
    """Append the Weierstrass change taking imap.target onto the model E."""
    iso = isomorphism(imap.target, E)
    if iso is None:
        raise ValueError(f"{imap.target} is not isomorphic to {E}")
    u, r = iso
    if (u, r) == (1, 0):
        return imap
    st = change_step(imap.target, u, r)
    assert st.target == E
    return IsogenyMap(imap.source, E, imap.degree, imap.steps + (st,), imap.tag)
