"""Rational torsion via Nagell-Lutz on an integral model."""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .curve import CurveQ, NotOnCurve, cubic_discriminant
from .exactnum import factorize, integer_roots, lcm

MAZUR_CYCLIC = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)
MAZUR_NONCYCLIC = (2, 4, 6, 8)  # Z/2 + Z/n


@dataclass(frozen=True)
class IntegralModel:
    curve: CurveQ
    lam: int

    def to_model(self, P):
        if P is None:
            return None
        return (P[0] * self.lam**2, P[1] * self.lam**3)

    def from_model(self, P):
        if P is None:
            return None
        return (P[0] / self.lam**2, P[1] / self.lam**3)


def integral_model(E):
    """Smallest lam > 0 with lam^2 a2, lam^4 a4, lam^6 a6 all integers."""
    lam = 1
    dens = [(c.denominator, w) for c, w in zip(E.coeffs, (2, 4, 6))]
    primes = set()
    for den, _ in dens:
        if den > 1:
            primes.update(factorize(den))
    for p in sorted(primes):
        need = 0
        for den, w in dens:
            v = 0
            while den % p == 0:
                den //= p
                v += 1
            need = max(need, -(-v // w))
        lam *= p**need
    Ei = CurveQ(E.a2 * lam**2, E.a4 * lam**4, E.a6 * lam**6)
    return IntegralModel(Ei, lam)


def _is_integral(P):
    return P is None or (P[0].denominator == 1 and P[1].denominator == 1)


def point_order(E, P, model=None):
    """Order of P (1..12) or None if P has infinite order.

    On the integral model every torsion multiple must stay integral, which
    detects most non-torsion points after a few additions.
    """
    if not E.contains(P):
        raise NotOnCurve(f"{P} is not on {E}")
    if P is None:
        return 1
    model = model or integral_model(E)
    Ei = model.curve
    Q0 = model.to_model(P)
    Q = Q0
    for k in range(1, 13):
        if Q is None:
            return k
        if not _is_integral(Q):
            return None
        Q = Ei._add(Q, Q0)
    return None


@dataclass(frozen=True)
class TorsionGroup:
    points: tuple
    structure: str
    orders: dict = field(default_factory=dict, compare=False)

    @property
    def order(self):
        return len(self.points)

    def __contains__(self, P):
        return P in self.points


def _square_divisor_roots(n):
    """All y > 0 with y^2 | n."""
    ys = [1]
    for p, e in factorize(n).items():
        ys = [y * p**k for y in ys for k in range(e // 2 + 1)]
    return sorted(ys)


def torsion_subgroup(E):
    E.require_nonsingular()
    model = integral_model(E)
    Ei = model.curve
    a2, a4, a6 = (int(c) for c in Ei.coeffs)
    D = cubic_discriminant(a2, a4, a6)
    found = {None: 1}
    cands = []
    for r in integer_roots([1, a2, a4, a6]):
        cands.append((Fraction(r), Fraction(0)))
    for y in _square_divisor_roots(D):
        for r in integer_roots([1, a2, a4, a6 - y * y]):
            cands += [(Fraction(r), Fraction(y)), (Fraction(r), Fraction(-y))]
    for Q in cands:
        k = point_order(Ei, Q, model=_IDENTITY_MODEL(Ei))
        if k is not None:
            found[model.from_model(Q)] = k
    pts = sorted(found, key=lambda P: (0, 0, 0) if P is None else (1, P[0], P[1]))
    n2 = sum(1 for P, k in found.items() if k == 2)
    n = len(found)
    structure = f"Z/2+Z/{n // 2}" if n2 == 3 else f"Z/{n}"
    return TorsionGroup(tuple(pts), structure, dict(found))


def _IDENTITY_MODEL(Ei):
    return IntegralModel(Ei, 1)


def torsion_order_bound(E, primes=(3, 5, 7, 11, 13, 17, 19, 23, 29, 31)):
    """gcd of #E(F_p) over good odd primes: a multiple of the torsion order."""
    model = integral_model(E)
    a2, a4, a6 = (int(c) for c in model.curve.coeffs)
    D = 16 * cubic_discriminant(a2, a4, a6)
    g = 0
    for p in primes:
        if D % p == 0:
            continue
        sq = [0] * p
        for t in range(p):
            sq[t * t % p] += 1
        count = 1 + sum(sq[(x**3 + a2 * x * x + a4 * x + a6) % p] for x in range(p))
        g = gcd(g, count)
    return g


__all__ = [
    "IntegralModel", "integral_model", "point_order", "TorsionGroup", "torsion_subgroup",
    "torsion_order_bound", "MAZUR_CYCLIC", "MAZUR_NONCYCLIC", "lcm",
]
