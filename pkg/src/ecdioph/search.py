"""Rational point search on Weierstrass curves.

naive_search enumerates x = d u^2 / v^2 on curves with a rational 2-torsion
point (moved to the origin), and x = n / v^2 otherwise. descent_search scans
the conic F^2 = alpha G^2 + d H^2 attached to each squarefree d | b and can
optionally continue into the second-stage quartics.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .curve import CurveQ
from .exactnum import (
    _unit_brackets,
    integer_roots,
    rational_square_root,
    squarefree_decompose,
    squarefree_divisors,
)
from .quartic import DegenerateQuartic, QuarticModel
from .torsion import integral_model

_MODULI = (64, 63, 65, 11, 17, 19, 23, 29, 31, 37)
_SQ_TABLES = {m: np.zeros(m, dtype=bool) for m in _MODULI}
for _m, _t in _SQ_TABLES.items():
    _t[[(i * i) % _m for i in range(_m)]] = True


@dataclass(frozen=True)
class SearchBudget:
    max_uv: int = 100
    max_param: int = 50
    worker_count: int = 1
    second_stage: bool = False
    quartic_bound: int = 30
    progress: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.max_uv < 1 or self.max_param < 1 or self.worker_count < 1 or self.quartic_bound < 1:
            raise ValueError("search bounds and worker count must be positive")


@dataclass(frozen=True)
class DescentBranch:
    d: int
    a: int
    b: int
    alpha: int
    beta: int
    seed: tuple = None  # (F0, G0, H0)


def naive_height(P):
    x = P[0]
    return max(abs(x.numerator), x.denominator)


def sort_points(points):
    uniq = {P for P in points if P is not None}
    return sorted(uniq, key=lambda P: (naive_height(P), P[0], P[1]))


def _report(budget, label, count):
    if budget is not None and budget.progress is not None:
        budget.progress(label, count)


# ---------------------------------------------------------------------------
# naive search


def _mod_vec(vals, m):
    return np.array([v % m for v in vals], dtype=np.int64)


def _square_mask(terms, shape):
    """terms: list of (coef, vec_u_power, vec_v_power) residue factories.

    Each term is (c, fu, fv) with fu(m), fv(m) int64 arrays of residues; the
    mask keeps cells where sum c*fu*fv is a square modulo every modulus.
    """
    mask = np.ones(shape, dtype=bool)
    for m in _MODULI:
        acc = np.zeros(shape, dtype=np.int64)
        for c, fu, fv in terms:
            acc = (acc + (c % m) * np.outer(fu(m), fv(m)) % m) % m
        mask &= _SQ_TABLES[m][acc]
    return mask


def _dform_chunk(args):
    """Integral points search for y^2 = x^3 + a x^2 + b x on one divisor d."""
    a, b, d, B, vres, workers = args
    e = b // d
    us = list(range(1, B + 1))
    vs = [v for v in range(1, B + 1) if v % workers == vres and gcd(v, d) == 1]
    if not vs:
        return [], 0
    pw = lambda xs, k: (lambda m: np.array([pow(x, k, m) for x in xs], dtype=np.int64))
    terms = [(d, pw(us, 4), pw(vs, 0)), (a, pw(us, 2), pw(vs, 2)), (e, pw(us, 0), pw(vs, 4))]
    mask = _square_mask(terms, (len(us), len(vs)))
    ua = np.array(us)[:, None]
    va = np.array(vs)[None, :]
    mask &= np.gcd(ua, va) == 1
    out = []
    for i, j in zip(*np.nonzero(mask)):
        u, v = us[i], vs[j]
        w2 = d * u**4 + a * u * u * v * v + e * v**4
        if w2 < 0:
            continue
        w = isqrt(w2)
        if w * w != w2:
            continue
        x = Fraction(d * u * u, v * v)
        y = Fraction(d * u * w, v**3)
        out += [(x, y), (x, -y)]
    return out, len(us) * len(vs)


def _general_chunk(args):
    """Points x = n/v^2 on y^2 = x^3 + a2 x^2 + a4 x + a6 (integer coefficients)."""
    a2, a4, a6, B, lo, vres, workers = args
    out, tested = [], 0
    for v in range(1, B + 1):
        if v % workers != vres:
            continue
        v2 = v * v
        n_lo = max(-B * B, lo * v2)
        n_hi = B * B
        if n_lo > n_hi:
            continue
        ns = np.arange(n_lo, n_hi + 1, dtype=np.int64)
        tested += len(ns)
        mask = np.ones(len(ns), dtype=bool)
        for m in _MODULI:
            nm = ns % m
            vm = v2 % m
            acc = (nm * nm % m) * nm % m
            acc = (acc + (a2 * vm % m) * (nm * nm % m)) % m
            acc = (acc + (a4 * pow(vm, 2, m) % m) * nm) % m
            acc = (acc + a6 * pow(vm, 3, m)) % m
            mask &= _SQ_TABLES[m][acc]
        if v > 1:
            mask &= np.gcd(ns, v) == 1
        for n in ns[mask].tolist():
            W = n**3 + a2 * n * n * v2 + a4 * n * v2 * v2 + a6 * v2**3
            if W < 0:
                continue
            r = isqrt(W)
            if r * r != W:
                continue
            x = Fraction(n, v2)
            y = Fraction(r, v**3)
            out += [(x, y), (x, -y)]
    return out, tested


def _run(fn, jobs, workers):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, jobs))


def _dform_divisors(a, b):
    ds = squarefree_divisors(b)
    if a * a < 4 * b:
        ds = [d for d in ds if d > 0]
    return ds


def naive_search(E, budget=None):
    """All points with u, v <= max_uv in x = d u^2/v^2 (or x = n/v^2, |n| <= max_uv^2)."""
    budget = budget or SearchBudget()
    E.require_nonsingular()
    model = integral_model(E)
    Ei = model.curve
    a2, a4, a6 = (int(c) for c in Ei.coeffs)
    B, W = budget.max_uv, budget.worker_count
    found = []
    roots = sorted(integer_roots([1, a2, a4, a6]))
    if roots:
        # one scan per rational 2-torsion point moved to the origin
        for r in roots:
            F = Ei.translate(r)
            a, b = int(F.a2), int(F.a4)
            jobs = [(a, b, d, B, k, W) for d in _dform_divisors(a, b) for k in range(W)]
            for pts, tested in _run(_dform_chunk, jobs, W):
                _report(budget, f"naive d-scan r={r}", tested)
                found += [(x + r, y) for x, y in pts]
    else:
        lo = min(_unit_brackets([1, a2, a4, a6]))
        jobs = [(a2, a4, a6, B, lo, k, W) for k in range(W)]
        for pts, tested in _run(_general_chunk, jobs, W):
            _report(budget, "naive x=n/v^2 scan", tested)
            found += pts
    out = [model.from_model(P) for P in found]
    for P in out:
        assert E.contains(P)
    return sort_points(out)


# ---------------------------------------------------------------------------
# descent


def _dform_of(E):
    """Integral a, b and the shift r (x_E = x/lam^2 + r) for a curve with a6 = 0 after a shift."""
    model = integral_model(E)
    Ei = model.curve
    if Ei.a6 == 0:
        return int(Ei.a2), int(Ei.a4), 0, model
    roots = sorted(integer_roots([int(c) for c in (1,) + Ei.coeffs]))
    if not roots:
        raise ValueError("descent needs a rational point of order 2")
    r = roots[0]
    F = Ei.translate(r)
    return int(F.a2), int(F.a4), r, model


def find_conic_seed(alpha, d, bound=200):
    """Small (F0, G0, H0) with F0^2 = alpha G0^2 + d H0^2 and G0 != 0."""
    if alpha == 1:
        return (1, 1, 0)
    for s in range(1, 2 * bound + 1):
        for G in range(1, s + 1):
            H = s - G
            v = alpha * G * G + d * H * H
            if v >= 0:
                F = isqrt(v)
                if F * F == v:
                    return (F, G, H)
    return None


def descent_branches(E, seed_bound=200):
    a, b, _, _ = _dform_of(E)
    if b == 0 or a * a == 4 * b:
        raise ValueError("singular curve: descent needs b != 0 and a^2 != 4b")
    alpha, beta = squarefree_decompose(a * a - 4 * b)
    out = []
    for d in _dform_divisors(a, b):
        out.append(DescentBranch(d, a, b, alpha, beta, find_conic_seed(alpha, d, seed_bound)))
    return out


def farey_params(bound, include_infinity=True):
    """Rationals p/q with max(|p|, q) <= bound, ordered by that size then value."""
    out = [Fraction(0)]
    for s in range(1, bound + 1):
        layer = set()
        for q in range(1, s + 1):
            for p in (s, -s) if q < s else range(-s, s + 1):
                if p and gcd(p, q) == 1:
                    layer.add(Fraction(p, q))
        out += sorted(layer)
    return out + ([None] if include_infinity else [])


def conic_ratio(br, m):
    """F/G on F^2 = alpha G^2 + d H^2 along the line of slope m through the seed."""
    F0, G0, H0 = br.seed
    d = br.d
    if m is None:
        return Fraction(-F0, G0)
    den = G0 * (d - m * m)
    if den == 0:
        return None
    return (d * (F0 - 2 * m * H0) + m * m * F0) / den


def _points_from_ratio(br, X):
    """Points with u^2/v^2 = (beta X - a)/(2d), for X and -X (G -> -G)."""
    out = []
    for s in (X, -X):
        R = (br.beta * s - br.a) / (2 * br.d)
        if R == 0 or rational_square_root(R) is None:
            continue
        x = br.d * R
        y2 = x**3 + br.a * x * x + br.b * x
        y = rational_square_root(y2)
        if y is not None:
            out += [(x, y), (x, -y)]
    return out


def _branch_scan(args):
    br, bound = args
    out = []
    params = farey_params(bound)
    for m in params:
        X = conic_ratio(br, m)
        if X is not None:
            out += _points_from_ratio(br, X)
    return out, len(params)


def descent_search(E, budget=None):
    """Conic scan over every branch, merged with naive_search at the same budget."""
    budget = budget or SearchBudget()
    E.require_nonsingular()
    a, b, r, model = _dform_of(E)
    branches = descent_branches(E)
    jobs = [(br, budget.max_param) for br in branches if br.seed is not None]
    found = []
    for (pts, tested), br in zip(_run(_branch_scan, jobs, budget.worker_count), [j[0] for j in jobs]):
        _report(budget, f"descent d={br.d}", tested)
        found += pts
    if budget.second_stage:
        for br in branches:
            if br.seed is None:
                continue
            for dq in descent_quartics(br, bound=budget.max_param):
                for t, _ in quartic_search(dq.quartic, budget.quartic_bound):
                    X = dq.conic_ratio_at(t, br)
                    if X is not None:
                        found += _points_from_ratio(br, X)
    pts = [model.from_model((x + r, y)) for x, y in found]
    for P in pts:
        assert E.contains(P)
    return sort_points(pts + naive_search(E, budget))


# second stage ---------------------------------------------------------------


def descent_numerator(br):
    """(A, B, C) with u^2/v^2 = (A m^2 + B m + C) / (2 d G0 (d - m^2))."""
    F0, G0, H0 = br.seed
    a, beta, d = br.a, br.beta, br.d
    return (beta * F0 + a * G0, -2 * beta * d * H0, d * (beta * F0 - a * G0))


def quartic_coefficients(br, k, m0, s0, numerator=None):
    """c0..c4 of the second-stage quartic in t, by substituting the line's
    second intersection m(t) into the numerator quadratic."""
    from .ratfunc import Poly

    F0, G0, H0 = br.seed
    d = br.d
    A, Bc, C = numerator or descent_numerator(br)
    t = Poly.var(0)
    n = -(2 * d * G0 * m0 + 2 * k * s0 * t - k * m0 * t * t)
    D = 2 * d * G0 + k * t * t
    P = n * n * A + n * D * Bc + D * D * C
    cs = P.coeffs_in(0)
    cs = [Fraction(0)] * (5 - len(cs)) + list(cs)
    return tuple(Fraction(c) for c in cs)


def printed_quartic_coefficients(a, beta, d, k, m0, s0, F0, G0, H0):
    """The closed forms for c0..c4 in the form usually quoted for this descent."""
    c0 = k**2 * (beta * (d * (F0 - 2 * H0 * m0) + G0 * m0**2) - a * (d * G0 - F0 * m0**2))
    c1 = -4 * k**2 * s0 * (a * F0 * m0 + beta * (G0 * m0 - d * H0))
    c2 = 4 * k * (beta * G0 * (d**2 * F0 - d * G0 * m0**2 + k * s0**2) - a * (d**2 * G0**2 + d * F0 * G0 * m0**2 - F0 * k * s0**2))
    c3 = 8 * d * G0 * k * s0 * (a * F0 * m0 + beta * (d * H0 + G0 * m0))
    c4 = 4 * d**2 * G0**2 * (beta * (d * (F0 + 2 * H0 * m0) + G0 * m0**2) - a * (d * G0 - F0 * m0**2))
    return tuple(Fraction(c) for c in (c0, c1, c2, c3, c4))


@dataclass(frozen=True)
class DescentQuartic:
    k: int
    m0: Fraction
    s0: Fraction
    quartic: QuarticModel

    def m_at(self, t, br):
        d, G0 = br.d, br.seed[1]
        den = 2 * d * G0 + self.k * t * t
        if den == 0:
            return None
        return -(2 * d * G0 * self.m0 + self.k * t * (2 * self.s0 - self.m0 * t)) / den

    def conic_ratio_at(self, t, br):
        m = self.m_at(t, br)
        return None if m is None else conic_ratio(br, m)


def resultant_bound(br):
    d, G0 = br.d, br.seed[1]
    return 16 * d**4 * G0**3 * (br.a * br.a - 4 * br.b)


def first_stage_seed(br, k, bound=50):
    """(m0, s0) with -2 d G0 m0^2 + 2 d^2 G0 = k s0^2."""
    d, G0 = br.d, br.seed[1]
    for m in farey_params(bound, include_infinity=False):
        s = rational_square_root(Fraction(-2 * d * G0 * m * m + 2 * d * d * G0, k))
        if s is not None:
            return m, s
    return None


def descent_quartics(br, seed=None, bound=50):
    """One second-stage quartic per squarefree k dividing the resultant bound."""
    out = []
    for k in squarefree_divisors(resultant_bound(br)):
        d, G0 = br.d, br.seed[1]
        s = None
        if seed is not None:
            m0, s0 = (Fraction(v) for v in seed)
            if -2 * d * G0 * m0 * m0 + 2 * d * d * G0 == k * s0 * s0:
                s = (m0, s0)
        else:
            s = first_stage_seed(br, k, bound)
        if s is None:
            continue
        cs = quartic_coefficients(br, k, *s)
        try:
            q = QuarticModel(*(k * c for c in cs))
        except DegenerateQuartic:
            continue
        out.append(DescentQuartic(k, s[0], s[1], q))
    return out


def quartic_search(q, bound):
    """Rational x = p/r with max(|p|, r) <= bound making q(x) a square (plus x = infinity as None)."""
    out = []
    for x in farey_params(bound, include_infinity=False):
        y = rational_square_root(q(x))
        if y is not None:
            out += [(x, y)] + ([(x, -y)] if y else [])
    return out


__all__ = [
    "SearchBudget", "DescentBranch", "DescentQuartic", "naive_search", "descent_branches",
    "descent_search", "descent_quartics", "quartic_search", "farey_params", "naive_height",
    "sort_points", "find_conic_seed", "quartic_coefficients", "printed_quartic_coefficients",
    "descent_numerator", "resultant_bound", "first_stage_seed", "conic_ratio",
]
