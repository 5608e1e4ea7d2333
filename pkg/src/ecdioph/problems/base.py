"""Family registry plumbing: instances, solution records and shared helpers."""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from ..exactnum import as_rational, primitive_integers, rational_roots, rational_square_root
from ..ratfunc import Rejection

REGISTRY = {}


class SingularParameter(ValueError):
    pass


class DegenerateParameter(ValueError):
    pass


@dataclass(frozen=True)
class FamilyMeta:
    """Descriptive facts used only by the test suite, never by the algorithms."""

    torsion: str = None  # expected structure for generic parameters
    singular: str = ""  # human description of the singular locus
    notes: str = ""


@dataclass(frozen=True)
class FamilyInstance:
    family: str
    params: tuple  # ((name, Fraction), ...) in signature order

    @property
    def p(self):
        return dict(self.params)

    def label(self):
        from ..exactnum import fmt_rational

        return ",".join(f"{k}={fmt_rational(v)}" for k, v in self.params)


@dataclass(frozen=True)
class SolutionRecord:
    family: str
    params: tuple
    solution: tuple
    point: tuple = None
    verified: bool = False
    filter_status: str = "ok"
    provenance: str = "search"
    fields: tuple = field(default=(), compare=False)

    def named(self):
        return dict(zip(self.fields, self.solution))


def register(cls):
    REGISTRY[cls.name] = cls()
    return cls


def get_family(name):
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}") from None


def instance(name, **params):
    fam = get_family(name)
    missing = [k for k in fam.params if k not in params]
    extra = [k for k in params if k not in fam.params]
    if missing or extra:
        raise TypeError(f"{name} takes parameters {fam.params}; missing {missing}, unexpected {extra}")
    vals = tuple((k, as_rational(params[k])) for k in fam.params)
    inst = FamilyInstance(name, vals)
    fam.check(inst.p)
    return inst


# -- arithmetic helpers -------------------------------------------------------


def sqrt_or_none(q):
    return rational_square_root(Fraction(q))


def is_rational_square(q):
    return rational_square_root(Fraction(q)) is not None


def quadratic_roots(a, b, c):
    """Rational roots of a t^2 + b t + c (a may be zero)."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == 0:
        return [] if b == 0 else [-c / b]
    return sorted(rational_roots([a, b, c]))


def tan_half(e):
    """2e/(1 - e^2), the tangent-double-angle form used by Pythagorean ratios."""
    return 2 * e / (1 - e * e)


def heron16(a, b, c):
    """16 * area^2 of the triangle with sides a, b, c."""
    return (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c)


def is_triangle(a, b, c):
    return a > 0 and b > 0 and c > 0 and a + b > c and b + c > a and c + a > b


def normalize_projective(sol):
    """Primitive integer tuple; overall sign makes the sum positive (first nonzero if the sum is 0)."""
    ints = primitive_integers(sol)
    s = sum(ints)
    if s < 0 or (s == 0 and next((v for v in ints if v), 0) < 0):
        ints = tuple(-v for v in ints)
    return tuple(Fraction(v) for v in ints)


class Family:
    name = ""
    params = ("N",)
    fields = ()
    description = ""
    homogeneous = False
    symmetry = ()  # extra index permutations under which solutions are equal
    meta = FamilyMeta()
    has_curve = True

    # -- to be provided by subclasses --------------------------------------
    def singular(self, p):
        """Reason string when the parameters are in the singular locus."""
        return None

    def curve(self, p):
        raise NotImplementedError

    def candidates(self, p, P):
        """All solution tuples obtained from the point P (every sign / root choice)."""
        raise NotImplementedError

    def verify(self, p, sol):
        raise NotImplementedError

    def accept(self, p, P, sol):
        """None if the solution passes the family filter, else the filter name."""
        return None

    def status(self, p, sol):
        return "ok"

    def isogenies(self, p):
        """Registered isogenies with source self.curve(p)."""
        return []

    def parametric(self, k):
        """(params, solution) of the closed-form family at parameter k."""
        raise NotImplementedError(f"{self.name} has no parametric family")

    # -- shared behaviour ----------------------------------------------------
    def check(self, p):
        why = self.singular(p)
        if why:
            raise SingularParameter(f"{self.name}: {why}")

    def normalize(self, sol):
        sol = tuple(Fraction(v) for v in sol)
        if self.homogeneous and any(sol):
            return normalize_projective(sol)
        return sol

    def key(self, sol, p=None):
        """Canonical representative of sol under the symmetries (some depend on the parameters p)."""
        sol = self.normalize(sol)
        variants = [sol] + [tuple(sol[i] for i in perm) for perm in self.symmetry]
        variants += self.extra_variants(sol, p)
        return min((self.normalize(v) for v in variants), key=_display_rank)

    def extra_variants(self, sol, p):
        """Equivalent tuples beyond index permutations (sign changes and the like)."""
        return []

    def same(self, a, b, p=None):
        return self.key(a, p) == self.key(b, p)

    def signature(self):
        return {"name": self.name, "params": list(self.params), "fields": list(self.fields), "description": self.description}


def _display_rank(t):
    # fewest negative entries first, then the lexicographically largest
    return (sum(v < 0 for v in t), tuple(-v for v in t))


ALL_PERMS3 = tuple(p for p in permutations(range(3)) if p != (0, 1, 2))
CYCLIC3 = ((1, 2, 0), (2, 0, 1))


__all__ = [
    "REGISTRY", "SingularParameter", "DegenerateParameter", "FamilyMeta", "FamilyInstance",
    "SolutionRecord", "Family", "register", "get_family", "instance", "sqrt_or_none",
    "is_rational_square", "quadratic_roots", "tan_half", "heron16", "is_triangle",
    "normalize_projective", "ALL_PERMS3", "CYCLIC3", "Rejection",
]
