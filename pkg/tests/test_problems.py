from fractions import Fraction as F

import pytest

from ecdioph.problems import REGISTRY, count_magic_squares, instance, solve
from ecdioph.problems.base import Rejection, SingularParameter
from ecdioph.problems.driver import (
    build_curve, enumerate_points, find_points, integer_lemma_check, to_solution, verify,
)
from ecdioph.problems.geometry import side_quest_scan
from ecdioph.problems.triangles import congruent_descent
from ecdioph.search import SearchBudget
from ecdioph.torsion import torsion_subgroup


def keys_from_point(name, params, P):
    recs = to_solution(instance(name, **params), (F(P[0]), F(P[1])))
    assert not isinstance(recs, Rejection), recs
    return [r.solution for r in recs]


def golden_key(name, params, sol):
    inst = instance(name, **params)
    fam = REGISTRY[name]
    sol = tuple(F(v) for v in sol)
    assert fam.verify(inst.p, sol)
    return fam.key(sol, inst.p)


@pytest.mark.parametrize(
    "name,params,P,sol",
    [
        ("knight", {"N": 48}, (F(1587, 191**2), F(42509244, 191**3)), (-402523, 200445, 18972030)),
        ("bgb1", {"N": 6}, (-3, 13), (2, 12, 9)),
        ("cube_ratio", {"N": 11}, (-140, 34280), (232, 1946, -1947)),
        ("two_cubes", {"N": 6}, (28, 80), (F(37, 21), F(17, 21))),
        ("base_alt_ba", {"N": 5}, (-25, 35), (600, 409, 241)),
        ("congruent", {"N": 5}, (-4, 6), (F(3, 2), F(20, 3), F(41, 6))),
        ("cuboid_body", {"m": 1, "n": 11}, (6480, -617760), (44, 117, 240)),
        ("cuboid_face", {"m": 4, "n": 5}, (9, -1170), (104, 672, 153)),
        ("magic_square", {"m": 5, "n": 2}, (-841, -48720),
         (66962532323709092281, 66912231954064693560, -66242061171706762440)),
    ],
)
def test_golden_from_point(name, params, P, sol):
    assert golden_key(name, params, sol) in keys_from_point(name, params, P)


@pytest.mark.parametrize(
    "name,params,sol",
    [
        ("bga", {"N": 41}, (27270901, 30959144, 85147693)),
        ("prod_diff", {"N": 47}, (320, 1937, 671, 5439)),
        ("prod_mixed", {"N": 34}, (485, 61, 689, 168)),
        ("prod_sum", {"N": 5}, (2, 1, 1, 1)),
        ("leech", {"N": 28}, (455, 528, 697, 14791)),
        ("circum_in", {"N": 26}, (11, 39, 49)),
        ("eq_sum_product", {"N": 13}, (F(36, 77), F(121, 42), F(637, 66))),
        ("cuboid_side", {"f": 9}, (F(41, 10), F(1281, 400), F(23839, 8100))),
    ],
)
def test_golden_verifies(name, params, sol):
    assert verify(instance(name, **params), sol)


@pytest.mark.parametrize(
    "name,params,bound,L,sol",
    [
        ("prod_diff", {"N": 47}, 40, 1, (320, 1937, 671, 5439)),
        ("prod_mixed", {"N": 34}, 40, 1, (485, 61, 689, 168)),
        ("prod_sum", {"N": 5}, 40, 1, (2, 1, 1, 1)),
        ("leech", {"N": 28}, 50, 1, (455, 528, 697, 14791)),
        ("cube_ratio", {"N": 11}, 40, 1, (232, 1946, -1947)),
        ("tiling_nu", {"g": F(1, 7)}, 30, 1, (F(7, 12), F(7, 24))),
        ("tiling_kappa", {"g": F(3, 4)}, 30, 1, (F(7, 13), F(45, 52))),
    ],
)
def test_solve_recovers(name, params, bound, L, sol):
    res = solve(instance(name, **params), SearchBudget(max_uv=bound, max_param=bound), enumerate_L=L)
    assert res.status == "ok"
    assert golden_key(name, params, sol) in res.tuples()
    assert all(r.verified for r in res)


def test_torsion_point_is_rejected():
    inst = instance("congruent", N=5)
    res = to_solution(inst, (F(0), F(0)))
    assert isinstance(res, Rejection) and not res


def test_singular_parameters():
    with pytest.raises(SingularParameter):
        instance("knight", N=9)
    with pytest.raises(SingularParameter):
        instance("congruent", N=0)
    with pytest.raises(KeyError):
        instance("no_such_family", N=1)


def test_build_curve_for_direct_family():
    with pytest.raises(ValueError):
        build_curve(instance("prod_sum", N=5))
    E, meta = build_curve(instance("congruent", N=6))
    assert E.coeffs == (0, -36, 0) and meta.torsion == "Z/2+Z/2"


def test_no_point_status():
    res = solve(instance("congruent", N=3), SearchBudget(max_uv=10, max_param=10))
    assert res.status == "no point found within budget"
    assert not res.tuples()


def test_integer_lemma():
    hits = integer_lemma_check(range(1, 101), range(-1000, 1001))
    assert {tuple(sorted(t)) for _, t in hits} == {(1, 2, 3)}


def test_congruent_descent_golden():
    hits = congruent_descent(61, 100)
    p, q, s, P, tri = hits[0]
    assert (p, q, s) == (5, 89, 1361)
    assert tri[0] == F(6428003, 1423110) and tri[1] == F(173619420, 6428003)


def test_magic_counts():
    assert count_magic_squares(180625, -41496, 138600).count == 7
    assert count_magic_squares(66962532323709092281, 66912231954064693560, -66242061171706762440).count == 6
    zero = count_magic_squares(0, 0, 0)
    assert not zero.distinct


def test_side_quest_scan_runs():
    out = side_quest_scan(2)
    assert isinstance(out, list)


def test_tiling_chi_near_misses_are_labelled():
    res = solve(instance("tiling_chi", e=F(1, 2), f=F(1, 3)), SearchBudget(max_uv=15, max_param=15))
    assert not res.records
    for m in res.near_misses:
        assert not m.verified and m.filter_status.startswith("non-solution")


def _small_points(name, params):
    fam = REGISTRY[name]
    inst = instance(name, **params)
    E = fam.curve(inst.p)
    pts, _ = find_points(E, SearchBudget(max_uv=6, max_param=6))
    return fam, inst, pts[:20]


SWEEP = [(n, f) for n, f in sorted(REGISTRY.items()) if f.has_curve]


@pytest.mark.parametrize("name,fam", SWEEP, ids=[n for n, _ in SWEEP])
def test_canonical_key_preserves_verification(name, fam):
    for v in (2, 3, 5, 7):
        try:
            params = {k: (v if j == 0 else (3, 1, 2)[j - 1]) for j, k in enumerate(fam.params)}
            fam, inst, pts = _small_points(name, params)
        except SingularParameter:
            continue
        for P in pts:
            cands = fam.candidates(inst.p, P)
            if isinstance(cands, Rejection):
                continue
            for sol in cands:
                if verify(inst, sol):
                    assert verify(inst, fam.key(sol, inst.p))
