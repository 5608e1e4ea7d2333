"""Bivariate polynomials and rational functions with Fraction coefficients.

Maps between models are stored as coefficient data in this form so they can
be printed, serialised and checked symbolically.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import fmt_rational


@dataclass(frozen=True)
class Rejection:
    reason: str
    detail: str = ""

    def __bool__(self):
        return False


def _frac(c):
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: _frac(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def var(cls, k):
        return cls({(1, 0) if k == 0 else (0, 1): 1})

    @staticmethod
    def lift(other):
        return other if isinstance(other, Poly) else Poly.const(other)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = Poly.lift(other) if not isinstance(other, RatFunc) else other
        if isinstance(other, RatFunc):
            return RatFunc(self) + other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return RatFunc(self) * other
        other = Poly.lift(other)
        out = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return RatFunc(self) / other

    def __rtruediv__(self, other):
        return RatFunc(Poly.lift(other)) / self

    def __pow__(self, n):
        out, base = Poly.const(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x, y=0):
        total = Fraction(0)
        for (i, j), c in self.terms.items():
            total += c * x**i * y**j
        return total

    def degree(self, k):
        return max((key[k] for key in self.terms), default=0)

    def monomial_content(self):
        if not self.terms:
            return (0, 0)
        return (min(i for i, _ in self.terms), min(j for _, j in self.terms))

    def shift_down(self, i0, j0):
        return Poly({(i - i0, j - j0): c for (i, j), c in self.terms.items()})

    def scale_vars(self, sx, sy):
        return Poly({(i, j): c * _frac(sx) ** i * _frac(sy) ** j for (i, j), c in self.terms.items()})

    def coeffs_in(self, k):
        """Univariate coefficient list (highest first) when only variable k occurs."""
        deg = self.degree(k)
        out = [Fraction(0)] * (deg + 1)
        for key, c in self.terms.items():
            if key[1 - k]:
                raise ValueError("polynomial is not univariate")
            out[deg - key[k]] += c
        return out

    def to_str(self, names=("x", "y")):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"{n}^{e}" if e > 1 else n for n, e in ((names[0], i), (names[1], j)) if e
            )
            coef = fmt_rational(c)
            if not mono:
                parts.append(coef)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.to_str()})"

    def to_data(self):
        return [[i, j, fmt_rational(c)] for (i, j), c in sorted(self.terms.items())]


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Poly.lift(num)
        den = Poly.const(1) if den is None else Poly.lift(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator polynomial")
        # cancel common monomial factors and normalise the denominator's scale
        i0, j0 = num.monomial_content() if not num.is_zero() else den.monomial_content()
        k0, l0 = den.monomial_content()
        ci, cj = min(i0, k0), min(j0, l0)
        if ci or cj:
            num, den = num.shift_down(ci, cj), den.shift_down(ci, cj)
        lead = den.terms[max(den.terms)]
        if lead != 1:
            num, den = num * (1 / lead), den * (1 / lead)
        self.num, self.den = num, den

    @staticmethod
    def lift(other):
        return other if isinstance(other, RatFunc) else RatFunc(Poly.lift(other))

    def __add__(self, other):
        o = RatFunc.lift(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatFunc.lift(other))

    def __rsub__(self, other):
        return RatFunc.lift(other) - self

    def __mul__(self, other):
        o = RatFunc.lift(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc.lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc.lift(other) / self

    def __pow__(self, n):
        return RatFunc(self.num**n, self.den**n)

    def evaluate(self, x, y=0):
        d = self.den(x, y)
        if d == 0:
            return Rejection("pole", f"denominator {self.den.to_str()} vanishes")
        return self.num(x, y) / d

    def to_str(self, names=("x", "y")):
        if self.den == Poly.const(1):
            return self.num.to_str(names)
        return f"({self.num.to_str(names)}) / ({self.den.to_str(names)})"

    def __repr__(self):
        return f"RatFunc({self.to_str()})"

    def to_data(self):
        return {"num": self.num.to_data(), "den": self.den.to_data()}


X = Poly.var(0)
Y = Poly.var(1)


@dataclass(frozen=True)
class RationalMap:
    """(s, t) -> (F(s, t), G(s, t)) with optional explicit values at poles."""

    first: RatFunc
    second: RatFunc
    names: tuple = ("x", "y")
    special: tuple = field(default=())  # ((input, output), ...) where input/output may be None

    def __call__(self, P):
        for src, dst in self.special:
            if src == P:
                return dst
        if P is None:
            return Rejection("pole", "point at infinity has no affine image")
        s, t = P
        a = self.first.evaluate(s, t)
        if isinstance(a, Rejection):
            return a
        b = self.second.evaluate(s, t)
        if isinstance(b, Rejection):
            return b
        return (a, b)

    def poles(self):
        return [self.first.den.to_str(self.names), self.second.den.to_str(self.names)]

    def describe(self, out_names=("X", "Y")):
        return [f"{out_names[0]} = {self.first.to_str(self.names)}", f"{out_names[1]} = {self.second.to_str(self.names)}"]

    def to_data(self):
        return {"names": list(self.names), "first": self.first.to_data(), "second": self.second.to_data()}
