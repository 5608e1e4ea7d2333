"""End-to-end pipeline: curve, search, isogeny transfer, enumeration, solutions, verification."""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from ..curve import CurveQ
from ..search import SearchBudget, descent_search, naive_search, sort_points
from ..torsion import point_order, torsion_subgroup
from .base import DegenerateParameter, FamilyInstance, Rejection, SolutionRecord, get_family, instance


@dataclass
class SolveResult:
    family: str
    params: tuple
    records: list
    status: str
    points: list = field(default_factory=list)
    generators: list = field(default_factory=list)
    near_misses: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def tuples(self):
        return [r.solution for r in self.records]


def _family(inst):
    return get_family(inst.family), inst.p


def build_curve(inst):
    fam, p = _family(inst)
    fam.check(p)
    if not fam.has_curve:
        raise ValueError(f"{fam.name} has no elliptic curve (closed form or quartic search only)")
    E = fam.curve(p)
    E.require_nonsingular()
    return E, fam.meta


def _safe_verify(fam, p, sol):
    try:
        return bool(fam.verify(p, sol))
    except ZeroDivisionError:
        return False


def verify(inst, solution):
    fam, p = _family(inst)
    sol = tuple(Fraction(v) for v in solution)
    if len(sol) != len(fam.fields):
        return False
    return _safe_verify(fam, p, sol)


def _record(inst, fam, p, sol, P, provenance):
    canon = fam.key(sol, p)
    ok = _safe_verify(fam, p, canon)
    return SolutionRecord(inst.family, inst.params, canon, P, ok, fam.status(p, sol), provenance, fam.fields)


def to_solution(inst, P, provenance="search"):
    """Verified records from the point P, or the Rejection explaining why there are none."""
    fam, p = _family(inst)
    cands = fam.candidates(p, P)
    if isinstance(cands, Rejection):
        return cands
    out, reasons = [], []
    for sol in cands:
        if not _safe_verify(fam, p, sol):
            reasons.append("not verified")
            continue
        why = fam.accept(p, P, sol)
        if why:
            reasons.append(why)
            continue
        rec = _record(inst, fam, p, sol, P, provenance)
        if not rec.verified:
            reasons.append("canonical form not verified")
        elif rec not in out:
            out.append(rec)
    if out:
        return out
    if P is not None and fam.has_curve and point_order(fam.curve(p), P) is not None:
        return Rejection("torsion-trivial", f"{P} is a torsion point")
    return Rejection("filter", ", ".join(sorted(set(reasons))) or "no candidates")


def parametric(name, k):
    """Closed-form family member at k as a verified SolutionRecord."""
    fam = get_family(name)
    try:
        params, sol = fam.parametric(k)
    except ZeroDivisionError:
        raise DegenerateParameter(f"{name}: k = {k} is degenerate") from None
    inst = FamilyInstance(name, tuple((n, Fraction(params[n])) for n in fam.params))
    sol = tuple(Fraction(v) for v in sol)
    if not _safe_verify(fam, inst.p, sol):
        raise DegenerateParameter(f"{name}: closed form at k = {k} does not verify")
    return SolutionRecord(name, inst.params, sol, None, True, fam.status(inst.p, sol), "parametric", fam.fields)


def enumerate_points(E, generators, torsion, L):
    """sum k_i P_i + T for |k_i| <= L and T in the torsion subgroup, deduplicated."""
    tors = list(torsion.points) if hasattr(torsion, "points") else list(torsion)
    if None not in tors:
        tors = [None] + tors
    multiples = [[E.multiply(k, G) for k in range(-L, L + 1)] for G in generators]
    seen, out = set(), []
    for combo in product(*multiples) if generators else [()]:
        S = None
        for Q in combo:
            S = E.add(S, Q)
        for T in tors:
            R = E.add(S, T)
            if R not in seen:
                seen.add(R)
                out.append(R)
    return out


def _search(E, budget):
    try:
        return descent_search(E, budget)
    except ValueError:
        return naive_search(E, budget)


def find_points(E, budget, isogenies=()):
    """Search E directly and through each isogeny (pulling target points back)."""
    pts = list(_search(E, budget))
    via = []
    for imap in isogenies:
        for Q in _search(imap.target, budget):
            via += [P for P in imap.pull_back(Q) if P is not None]
    seen = set(pts)
    extra = [P for P in via if P not in seen and not seen.add(P)]
    return sort_points(pts), sort_points(extra)


def pick_generators(E, points, torsion, max_generators=4, L=2):
    """Greedy non-torsion points not already in the span of earlier picks."""
    gens, span = [], set(torsion.points)
    for P in sort_points(points):
        if len(gens) >= max_generators:
            break
        if P in span or point_order(E, P) is not None:
            continue
        gens.append(P)
        span = set(enumerate_points(E, gens, torsion, L))
    return gens


def _height(sol):
    return max(max(abs(v.numerator), v.denominator) for v in sol) if sol else 0


def _direct(inst, fam, p, budget):
    bound = budget.max_param
    recs = []
    for sol in fam.direct(p, bound):
        sol = tuple(Fraction(v) for v in sol)
        if _safe_verify(fam, p, sol) and not fam.accept(p, None, sol):
            rec = _record(inst, fam, p, sol, None, "direct")
            if rec.verified:
                recs.append(rec)
    return recs


def _dedupe_sort(recs):
    best = {}
    for r in recs:
        k = r.solution
        if k not in best:
            best[k] = r
    return sorted(best.values(), key=lambda r: (_height(r.solution), r.solution))


def solve(inst, budget=None, use_isogenies=True, enumerate_L=1, max_generators=4):
    budget = budget or SearchBudget()
    if isinstance(inst, str):
        raise TypeError("pass a FamilyInstance (see instance())")
    fam, p = _family(inst)
    fam.check(p)
    if not fam.has_curve:
        recs = _dedupe_sort(_direct(inst, fam, p, budget))
        status = "ok" if recs else "no solution found within budget"
        return SolveResult(inst.family, inst.params, recs, status)
    E, _ = build_curve(inst)
    isos = fam.isogenies(p) if use_isogenies else []
    direct_pts, pulled = find_points(E, budget, isos)
    torsion = torsion_subgroup(E)
    found = direct_pts + pulled
    gens = pick_generators(E, found, torsion, max_generators)
    # torsion points rarely help, but they are checked like any other point
    pts = list(found) + [T for T in torsion.points if T is not None]
    if gens and enumerate_L > 0:
        pts += enumerate_points(E, gens, torsion, enumerate_L)
    pts = sort_points(list(dict.fromkeys(pts)))
    recs, misses = [], []
    pulled_set = set(pulled)
    for P in pts:
        prov = "torsion" if P in torsion else "isogeny-pullback" if P in pulled_set else "search"
        res = to_solution(inst, P, prov)
        if isinstance(res, Rejection):
            if hasattr(fam, "defect"):
                misses += _near_misses(inst, fam, p, P)
            continue
        recs += res
    recs = _dedupe_sort(recs)
    if recs:
        status = "ok"
    elif not gens:
        status = "no point found within budget"
    else:
        status = "no solution from points found"
    misses = sorted({m.solution: m for m in misses}.values(), key=lambda r: (fam.defect(r.solution), r.solution))
    return SolveResult(inst.family, inst.params, recs, status, pts, gens, misses[:10])


def _near_misses(inst, fam, p, P):
    cands = fam.candidates(p, P)
    if isinstance(cands, Rejection):
        return []
    out = []
    for sol in cands:
        if _safe_verify(fam, p, sol) and 0 not in sol:
            canon = fam.key(sol, p)
            status = f"non-solution defect={fam.defect(canon)}"
            out.append(SolutionRecord(inst.family, inst.params, canon, P, False, status, "search", fam.fields))
    return out


def solve_family(name, budget=None, **params):
    return solve(instance(name, **params), budget)


def integer_lemma_check(range_N, range_xyz):
    """Integer solutions of x + y + z = N = x y z by brute force over x, y."""
    Ns = set(range_N)
    lo, hi = min(range_xyz), max(range_xyz)
    out = []
    for x in range(lo, hi + 1):
        if x == 0:
            continue
        for y in range(x, hi + 1):
            if y == 0:
                continue
            # z = N - x - y with N = x y z  =>  z (x y - 1) = x + y
            d = x * y - 1
            if d == 0:
                continue
            if (x + y) % d:
                continue
            z = (x + y) // d
            if z < y or not (lo <= z <= hi):
                continue
            N = x + y + z
            if N in Ns and x * y * z == N:
                out.append((N, (x, y, z)))
    return out


__all__ = [
    "SolveResult", "build_curve", "verify", "to_solution", "parametric", "enumerate_points",
    "find_points", "pick_generators", "solve", "solve_family", "integer_lemma_check", "CurveQ",
]
