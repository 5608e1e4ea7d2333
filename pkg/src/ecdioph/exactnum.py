"""Exact integer and rational primitives.

Python ints are arbitrary precision and ``fractions.Fraction`` is always
stored reduced with a positive denominator, so they serve directly as the
BigInt / BigRational types.
"""
from fractions import Fraction
from math import gcd, isqrt

__all__ = [
    "Fraction", "FactoringBudgetExceeded", "as_rational", "parse_rational", "fmt_rational",
    "squarefree_decompose", "is_square", "rational_square_root", "integer_roots",
    "rational_roots", "factorize", "squarefree_divisors", "divisors", "small_primes",
    "primitive_integers", "lcm",
]


class FactoringBudgetExceeded(ArithmeticError):
    pass


def _sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [i for i, f in enumerate(flags) if f]


_SMALL = _sieve(1000)


def small_primes(limit=1000):
    return _SMALL if limit == 1000 else _sieve(limit)


def lcm(a, b):
    return abs(a * b) // gcd(a, b) if a and b else 0


def as_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def parse_rational(s):
    """Parse "p/q" or an integer literal; rejects floats."""
    s = s.strip()
    if not s:
        raise ValueError("empty rational")
    parts = s.split("/")
    if len(parts) > 2:
        raise ValueError(f"malformed rational {s!r}")
    try:
        num = int(parts[0])
        den = int(parts[1]) if len(parts) == 2 else 1
    except ValueError:
        raise ValueError(f"malformed rational {s!r}") from None
    if den == 0:
        raise ValueError(f"zero denominator in {s!r}")
    return Fraction(num, den)


def fmt_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def squarefree_decompose(n, trial_limit=10**6):
    """Return (d, u) with n = d*u**2, d squarefree with the sign of n, u > 0.

    Trial division by small primes; a cofactor m with no prime factor below L
    is certified once m < L**3 (then m is squarefree unless it is a perfect
    square). Division continues up to ``trial_limit`` before giving up.
    """
    if n == 0:
        raise ValueError("zero has no squarefree decomposition")
    sign = -1 if n < 0 else 1
    m = abs(n)
    d, u = 1, 1

    def strip(p):
        nonlocal m, d, u
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            u *= p ** (e // 2)
            if e % 2:
                d *= p

    for p in _SMALL:
        if p * p * p > m:
            break
        strip(p)
    bound = _SMALL[-1] + 1
    if m > 1 and bound ** 3 <= m:
        # continue on 6k±1 candidates up to the cube root of the cofactor
        p = bound + (5 - bound % 6) % 6  # first value ≡ 5 mod 6
        while p * p * p <= m:
            if p > trial_limit:
                raise FactoringBudgetExceeded(f"cannot certify squarefree part of {n} within trial limit {trial_limit}")
            strip(p)
            strip(p + 2)
            p += 6
    if m > 1:
        r = isqrt(m)
        if r * r == m:
            u *= r
        else:
            d *= m
    return sign * d, u


def is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def rational_square_root(q):
    """Non-negative rational square root of q, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    a, b = q.numerator, q.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def _eval(coeffs, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _deriv(coeffs):
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])]


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    return coeffs


def _cauchy_bound(coeffs):
    lead = abs(coeffs[0])
    return 1 + max((abs(c) for c in coeffs[1:]), default=0) // lead + 1


def _sign(v):
    return (v > 0) - (v < 0)


def _breakpoints(coeffs):
    """Sorted integers s such that the polynomial is monotone on every
    interval between consecutive breakpoints that are at least 2 apart, and on
    the two outer rays. Built from unit brackets around the real roots of the
    derivative (found recursively)."""
    der = _trim(_deriv(coeffs))
    if len(der) <= 1:
        return []
    return sorted(_unit_brackets(der))


def _unit_brackets(coeffs):
    """A set of integers containing floor and ceil of every real root."""
    out = set()
    bps = _breakpoints(coeffs)
    bound = _cauchy_bound(coeffs)
    pts = [-bound] + [b for b in bps if -bound < b < bound] + [bound]
    for b in bps:
        out.add(b)
    for lo, hi in zip(pts, pts[1:]):
        if hi - lo <= 1:
            out.update((lo, hi))
            continue
        flo, fhi = _sign(_eval(coeffs, lo)), _sign(_eval(coeffs, hi))
        if flo == 0:
            out.add(lo)
        if fhi == 0:
            out.add(hi)
        if flo * fhi < 0:
            while hi - lo > 1:
                mid = (lo + hi) // 2
                fm = _sign(_eval(coeffs, mid))
                if fm == 0:
                    lo = hi = mid
                    break
                if fm == flo:
                    lo = mid
                else:
                    hi = mid
            out.update((lo, hi))
    return out


def integer_roots(coeffs):
    """Integer roots of an integer polynomial given highest degree first.

    Works by isolating monotone stretches between integer brackets of the
    derivative's real roots, so no factoring of the constant term is needed.
    """
    coeffs = _trim(int(c) for c in coeffs)
    if not coeffs:
        raise ValueError("zero polynomial")
    if len(coeffs) == 1:
        return set()
    roots = set()
    # strip x = 0 first so that large coefficients don't hide it
    while coeffs[-1] == 0:
        roots.add(0)
        coeffs.pop()
        if len(coeffs) == 1:
            return roots
    for s in _unit_brackets(coeffs):
        if _eval(coeffs, s) == 0:
            roots.add(s)
    return roots


def rational_roots(coeffs):
    """Rational roots of a polynomial with rational coefficients (highest first)."""
    coeffs = _trim(Fraction(c) for c in coeffs)
    if not coeffs:
        raise ValueError("zero polynomial")
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    lead = ints[0]
    n = len(ints) - 1
    # x = X/lead turns the polynomial monic in X with integer coefficients
    monic = [ints[i] * lead ** (i - 1) if i else 1 for i in range(n + 1)]
    return {Fraction(r, lead) for r in integer_roots(monic)}


def factorize(n):
    """Prime factorisation {p: e} of a nonzero integer (sign dropped)."""
    from sympy import factorint

    if n == 0:
        raise ValueError("cannot factor zero")
    return {int(p): int(e) for p, e in factorint(abs(n)).items()}


def squarefree_divisors(n, signed=True):
    primes = sorted(factorize(n))
    out = [1]
    for p in primes:
        out += [d * p for d in out]
    if signed:
        out += [-d for d in out]
    return sorted(out, key=lambda d: (abs(d), d))


def divisors(n):
    out = [1]
    for p, e in factorize(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def primitive_integers(values):
    """Scale a tuple of rationals to coprime integers (sign preserved)."""
    values = [Fraction(v) for v in values]
    den = 1
    for v in values:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in values]
    g = 0
    for i in ints:
        g = gcd(g, i)
    return tuple(i // g for i in ints) if g else tuple(ints)
