import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ecdioph.curve import (
    CurveQ, GeneralCurveQ, NotOnCurve, SingularCurve, apply_isomorphism, doubling_x_square_rule,
    halve_point, invert_isomorphism, isomorphism, simplify,
)

# y^2 = x^3 + 17 has rank 2 with independent points (-2, 3) and (-1, 4)
MORDELL = CurveQ(0, 0, 17)
P1, P2 = (F(-2), F(3)), (F(-1), F(4))
# congruent curve N = 5: full 2-torsion plus a point of infinite order
CONG = CurveQ(0, -25, 0)
C1 = (F(-4), F(6))


def _pool(E, gens, torsion, k):
    pts = set()
    for a in range(-k, k + 1):
        for b in range(-k, k + 1):
            S = E.add(E.multiply(a, gens[0]), E.multiply(b, gens[1]) if len(gens) > 1 else None)
            for T in torsion:
                pts.add(E.add(S, T))
    return sorted(pts, key=lambda P: (P is not None, str(P)))


POOL = _pool(MORDELL, [P1, P2], [None], 3)
CPOOL = _pool(CONG, [C1], [None] + CONG.two_torsion(), 4)


def test_associativity_1000_triples():
    rng = random.Random(20240501)
    failures = 0
    for E, pool in ((MORDELL, POOL), (CONG, CPOOL)):
        for _ in range(500):
            P, Q, R = (rng.choice(pool) for _ in range(3))
            if E.add(E.add(P, Q), R) != E.add(P, E.add(Q, R)):
                failures += 1
    assert failures == 0


@settings(max_examples=200)
@given(st.integers(0, len(POOL) - 1), st.integers(0, len(POOL) - 1))
def test_closure_commutativity_inverse(i, j):
    E = MORDELL
    P, Q = POOL[i], POOL[j]
    S = E.add(P, Q)
    assert E.contains(S)
    assert S == E.add(Q, P)
    assert E.add(P, E.neg(P)) is None
    assert E.add(P, None) == P


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_multiply_is_repeated_addition(a, b):
    E = MORDELL
    assert E.add(E.multiply(a, P1), E.multiply(b, P1)) == E.multiply(a + b, P1)


def test_discriminant_and_components():
    assert CONG.discriminant == 1000000
    assert CONG.real_components() == 2
    assert MORDELL.real_components() == 1
    assert CurveQ(0, 0, 0).is_singular
    with pytest.raises(SingularCurve):
        CurveQ(-3, 3, -1).require_nonsingular()


def test_egg_component_rules():
    # egg [-5, 0] and infinite branch [5, oo) on y^2 = x^3 - 25x
    E = CONG
    egg = [P for P in CPOOL if P is not None and P[1] != 0 and E.component_of(P) == "egg"]
    inf = [P for P in CPOOL if P is not None and P[1] != 0 and E.component_of(P) == "infinite"]
    assert egg and inf
    for P in egg[:6]:
        assert -5 <= P[0] <= 0
        for Q in egg[:6]:
            R = E.add(P, Q)
            assert R is None or E.component_of(R) == "infinite"
        for Q in inf[:6]:
            assert E.component_of(E.add(P, Q)) == "egg"
        assert E.component_of(E.double(P)) == "infinite"
    for P in inf[:6]:
        for Q in inf[:6]:
            assert E.component_of(E.add(P, Q)) == "infinite"


def test_not_on_curve():
    with pytest.raises(NotOnCurve):
        MORDELL.add((F(1), F(1)), P1)


def test_lift_and_two_torsion():
    assert CONG.lift_x(-4) == [(F(-4), F(6)), (F(-4), F(-6))]
    assert CONG.lift_x(1) == []
    assert CONG.two_torsion() == [(F(-5), F(0)), (F(0), F(0)), (F(5), F(0))]


@pytest.mark.parametrize("u,r", [(2, 0), (F(1, 3), 5), (-1, F(7, 2))])
def test_isomorphism_roundtrip(u, r):
    E2 = MORDELL.translate(r).scale(u)
    iso = isomorphism(MORDELL, E2)
    assert iso is not None
    Q = apply_isomorphism(iso, P1)
    assert E2.contains(Q)
    assert invert_isomorphism(iso, Q) == P1
    assert MORDELL.j_invariant == E2.j_invariant


def test_isomorphism_none():
    assert isomorphism(MORDELL, CurveQ(0, 0, 18)) is None


def test_doubling_rule_and_halving():
    P = C1
    D = CONG.double(P)
    assert doubling_x_square_rule(CONG, P) == D[0]
    assert P in halve_point(CONG, D)
    assert all(CONG.double(Q) == D for Q in halve_point(CONG, D))
    assert halve_point(CONG, P) == [] or all(CONG.double(Q) == P for Q in halve_point(CONG, P))


def test_simplify_general_model():
    C = GeneralCurveQ(1, -1, 1, -2, 3)
    E, to_E, from_E = simplify(C)
    for x in range(-5, 20):
        for P in E.lift_x(4 * x):
            Q = from_E(P)
            assert C.contains(Q)
            assert to_E(Q) == P
