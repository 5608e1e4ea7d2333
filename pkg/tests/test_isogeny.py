from fractions import Fraction as F

import pytest

from ecdioph.curve import CurveQ
from ecdioph.isogeny import (
    compose, four_isogeny_at, isogeny2, isogeny3, isogeny4, match_model, three_isogeny_at, two_isogeny_at,
    velu_map,
)
from ecdioph.problems import REGISTRY, instance
from ecdioph.torsion import torsion_subgroup

SEEDS = {
    ("eq_sum_product", 7): F(-21),
    ("knight", 48): F(1587, 191**2),
    ("circum_in", 26): F(-27),
    ("congruent", 6): F(12),
    ("base_alt_ba", 5): F(-25),
}


def _family_points(name, N, count=10):
    fam = REGISTRY[name]
    p = instance(name, N=N).p
    E = fam.curve(p)
    G = E.lift_x(SEEDS[(name, N)])[0]
    tors = torsion_subgroup(E).points
    pts = [E.add(E.multiply(k, G), T) for k in (1, -1, 2, -2) for T in tors]
    return fam, p, E, pts[:count]


@pytest.mark.parametrize("name,N", sorted(SEEDS))
def test_push_and_pull_back(name, N):
    fam, p, E, pts = _family_points(name, N)
    assert len(pts) == 10
    maps = fam.isogenies(p)
    assert maps
    for imap in maps:
        assert imap.source == E
        for P in pts:
            Q = imap.push(P)
            assert imap.target.contains(Q)
            if imap.degree > 6:
                # long chains: pull-back degree is checked on their factors
                continue
            back = imap.pull_back(Q)
            assert back
            assert E.multiply(imap.degree, P) in back
            assert all(imap.push(R) == imap.target.multiply(imap.degree, Q) for R in back)
        # homomorphism on a pair
        P, R = pts[0], pts[1]
        assert imap.push(E.add(P, R)) == imap.target.add(imap.push(P), imap.push(R))


def _targets(name, N):
    return [m.target.coeffs for m in REGISTRY[name].isogenies(instance(name, N=N).p)]


@pytest.mark.parametrize("N", [7, 13, 30, 101])
def test_eq_sum_product_three_isogeny_target(N):
    # V^2 = U^3 - 27 N^2 (U - 4 (N^2 - 27))^2
    expected = (-27 * N * N, 216 * N * N * (N * N - 27), -432 * N * N * (N * N - 27) ** 2)
    assert _targets("eq_sum_product", N) == [expected]


@pytest.mark.parametrize("N", [5, 13, 48, 200])
def test_knight_two_and_six_isogeny_targets(N):
    two = (-2 * (N * N - 6 * N - 3), (N - 9) * (N - 1) ** 3, 0)
    six = (-2 * (N * N + 18 * N - 27), (N - 1) * (N - 9) ** 3, 0)
    assert _targets("knight", N) == [two, six]


@pytest.mark.parametrize("N", [3, 13, 26, 74])
def test_circum_in_chain_targets(N):
    two = (-4 * (2 * N * N - 2 * N - 1), 16 * N**3 * (N - 2), 0)
    three = (18 * (2 * N * N + 10 * N - 1), 81 * (4 * N + 1) ** 3, 0)
    six = (-36 * (2 * N * N + 10 * N - 1), 1296 * N * (N - 2) ** 3, 0)
    assert _targets("circum_in", N) == [two, three, six]


@pytest.mark.parametrize("N", [3, 5, 13, 40])
def test_base_alt_chain_targets(N):
    two = (-2 * (N * N + 2), N * N * (N * N + 4), 0)
    four = (2 * (4 - N * N), (N * N + 4) ** 2, 0)
    assert _targets("base_alt_ba", N)[:2] == [two, four]


@pytest.mark.parametrize("N", [2, 5, 13, 42])
def test_dd40_chain_targets(N):
    four = (8 * (N * N - 1), 16 * (N * N + 1) ** 2, 0)
    second = (-32 * (2 * N * N + 1), 256, 0)
    targets = _targets("dd40", N)
    assert targets[1] == four
    assert targets[2] == second


@pytest.mark.parametrize("N", [3, 13, 42])
def test_dd60_four_isogeny_target(N):
    assert _targets("dd60", N)[1] == (2 * N * (1 - 2 * N), N * N, 0)


def test_isogeny2_formula():
    E = CurveQ(3, 5, 0)
    imap = isogeny2(E)
    assert imap.target == CurveQ(-6, -11, 0)
    with pytest.raises(ValueError):
        isogeny2(CurveQ(0, 0, 1))


def test_isogeny3_autodetect():
    E = CurveQ(4, 12, 9)  # (2x + 3)^2
    assert isogeny3(E).target == isogeny3(E, 2, 3).target
    with pytest.raises(ValueError):
        isogeny3(CurveQ(1, 0, 2))


def test_isogeny4_autodetect():
    E = CurveQ(1 + 2 * 3, 9, 0)  # a = 1, b = 3
    assert isogeny4(E).target == CurveQ(2 * (12 - 1), 13**2, 0)


@pytest.mark.parametrize(
    "E,degree",
    [(CurveQ(0, -25, 0), 2), (CurveQ(0, 0, 1), 3), (CurveQ(0, 4, 0), 4), (CurveQ(1, -1, 0), 3)],
)
def test_isogeny_at_matches_velu(E, degree):
    T = torsion_subgroup(E)
    kernel = [P for P, k in T.orders.items() if k == degree]
    build = {2: two_isogeny_at, 3: three_isogeny_at, 4: four_isogeny_at}[degree]
    for P in kernel:
        imap = build(E, P)
        assert imap.degree == degree
        half = [P] if degree != 4 else [P, E.multiply(2, P)]
        v = velu_map(E, half)
        assert v.degree == degree
        # both models describe the same curve up to isomorphism
        assert match_model(imap, v.target).target == v.target
        assert imap.push(P) is None


def test_compose_and_mismatch():
    E = CurveQ(0, -25, 0)
    f = isogeny2(E)
    g = isogeny2(f.target)
    h = compose(f, g)
    assert h.degree == 4
    P = (F(-4), F(6))
    assert h.push(P) == g.push(f.push(P))
    with pytest.raises(ValueError):
        compose(g, g)
    with pytest.raises(ValueError):
        match_model(f, CurveQ(0, 0, 17))
    assert f.describe()[0].startswith("[2-isogeny, degree 2]")
