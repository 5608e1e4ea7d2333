from fractions import Fraction as F

import pytest

from ecdioph.curve import CurveQ, cubic_discriminant
from ecdioph.problems import REGISTRY, SingularParameter, instance
from ecdioph.torsion import (
    MAZUR_CYCLIC, MAZUR_NONCYCLIC, integral_model, point_order, torsion_order_bound, torsion_subgroup,
)

# the stated structures are generic: these parameter values carry extra torsion
# (for example N a square for the concordant-type curves)
EXCEPTIONAL = {
    "bga": {2}, "bgb1": {5}, "bgb2": {5}, "concordant_recip": {4, 9, 16, 25, 36, 49}, "cube_ratio": {4},
    "cuboid_side": {7}, "dd10": {4, 9, 16, 25, 36, 49}, "dd110": {2}, "dd60": {4, 9, 16, 25, 36, 49},
    "euler_quartic": {8}, "fr3": {2}, "knight": {10}, "prod_mixed": {3}, "two_cubes": {2, 8, 27},
}

FAMILIES = sorted(
    n for n, f in REGISTRY.items() if f.has_curve and f.meta.torsion and len(f.params) == 1
)


def _generic_params(name, count=10):
    fam = REGISTRY[name]
    out = []
    for v in range(2, 80):
        if v in EXCEPTIONAL.get(name, ()):
            continue
        try:
            inst = instance(name, **{fam.params[0]: v})
        except SingularParameter:
            continue
        out.append(inst)
        if len(out) == count:
            break
    return out


def test_enough_families():
    assert len(FAMILIES) >= 10


@pytest.mark.parametrize("name", FAMILIES)
def test_family_torsion_structure(name):
    fam = REGISTRY[name]
    for inst in _generic_params(name):
        E = fam.curve(inst.p)
        T = torsion_subgroup(E)
        assert T.structure == fam.meta.torsion, (name, inst.p)
        assert torsion_order_bound(E) % T.order == 0


@pytest.mark.parametrize("name", sorted(EXCEPTIONAL))
def test_exceptional_parameters_have_more_torsion(name):
    fam = REGISTRY[name]
    v = min(EXCEPTIONAL[name])
    E = fam.curve(instance(name, **{fam.params[0]: v}).p)
    T = torsion_subgroup(E)
    assert T.structure != fam.meta.torsion
    for P, k in T.orders.items():
        assert E.multiply(k, P) is None
    assert torsion_order_bound(E) % T.order == 0


@pytest.mark.parametrize("name", FAMILIES)
def test_nagell_lutz_on_integral_model(name):
    fam = REGISTRY[name]
    for inst in _generic_params(name, 5):
        model = integral_model(fam.curve(inst.p))
        Ei = model.curve
        assert all(c.denominator == 1 for c in Ei.coeffs)
        D = cubic_discriminant(*(int(c) for c in Ei.coeffs))
        for P in torsion_subgroup(Ei).points:
            if P is None:
                continue
            assert P[0].denominator == 1 and P[1].denominator == 1
            assert P[1] == 0 or D % int(P[1]) ** 2 == 0


@pytest.mark.parametrize(
    "coeffs,structure",
    [
        ((0, 0, 1), "Z/6"),  # y^2 = x^3 + 1
        ((0, -1, 0), "Z/2+Z/2"),
        ((0, 4, 0), "Z/4"),
        ((0, 0, 17), "Z/1"),
        ((0, -25, 0), "Z/2+Z/2"),
        ((1, -1, 0), "Z/6"),  # (1, 1) has order 3, (0, 0) order 2
        ((F(1, 4), F(-1, 2), 0), "Z/2"),
        ((0, 0, -432), "Z/3"),
    ],
)
def test_known_torsion(coeffs, structure):
    assert torsion_subgroup(CurveQ(*coeffs)).structure == structure


def test_mazur_orders_and_point_order():
    E = CurveQ(0, 0, 1)
    T = torsion_subgroup(E)
    assert sorted(T.orders.values()) == [1, 2, 3, 3, 6, 6]
    assert T.order in MAZUR_CYCLIC
    assert 4 in MAZUR_NONCYCLIC
    assert point_order(E, (F(2), F(3))) == 6
    assert point_order(CurveQ(0, 0, 17), (F(-2), F(3))) is None
