from fractions import Fraction as F

import pytest

from ecdioph.curve import CurveQ
from ecdioph.quartic import QuarticModel
from ecdioph.search import (
    SearchBudget, descent_branches, descent_search, farey_params, naive_height, naive_search, quartic_search,
    sort_points,
)
from ecdioph.search import _branch_scan

ORACLE_CURVES = [
    CurveQ(0, -25, 0),
    CurveQ(0, -36, 0),
    CurveQ(0, -49, 0),
    CurveQ(-7, 10, 0),
    CurveQ(27, 1, 0),
    CurveQ(51, 625, 0),
    CurveQ(2, -3, 0),
    CurveQ(0, 17, 0),
    CurveQ(0, 1, 10),  # 2-torsion at x = -2, handled by a shift
    CurveQ(F(1, 4), F(-5, 16), 0),
]


@pytest.mark.parametrize("E", ORACLE_CURVES, ids=str)
def test_descent_contains_naive(E):
    budget = SearchBudget(max_uv=12, max_param=12)
    naive = set(naive_search(E, budget))
    desc = descent_search(E, budget)
    assert naive <= set(desc)
    assert all(E.contains(P) for P in desc)
    assert desc == sort_points(desc)


def test_conic_scan_finds_points_beyond_naive():
    # on y^2 = x^3 - 169 x the conic branches reach x = -3757/361, beyond u, v <= 10
    E = CurveQ(0, -169, 0)
    budget = SearchBudget(max_uv=10, max_param=10)
    naive = set(naive_search(E, budget))
    conic = set()
    for br in descent_branches(E):
        if br.seed is not None:
            conic.update(_branch_scan((br, budget.max_param))[0])
    assert (F(-3757, 361), F(-172380, 6859)) in conic - naive


def test_workers_do_not_change_results():
    E = CurveQ(0, -34 * 34, 0)
    one = descent_search(E, SearchBudget(max_uv=20, max_param=20))
    two = descent_search(E, SearchBudget(max_uv=20, max_param=20, worker_count=2))
    assert one == two


def test_naive_search_without_two_torsion():
    E = CurveQ(0, 0, 17)
    pts = naive_search(E, SearchBudget(max_uv=10))
    assert (F(-2), F(3)) in pts and (F(8), F(23)) in pts
    with pytest.raises(ValueError):
        descent_search(E)


def test_rational_coefficients():
    E = CurveQ(F(1, 4), -1, 0)
    pts = naive_search(E, SearchBudget(max_uv=8))
    assert pts and all(E.contains(P) for P in pts)


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_uv=0)


def test_progress_callback():
    seen = []
    naive_search(CurveQ(0, -25, 0), SearchBudget(max_uv=5, progress=lambda *a: seen.append(a)))
    assert seen


def test_farey_params():
    ps = farey_params(3)
    assert ps[0] == 0 and ps[-1] is None
    assert set(ps[:-1]) == {F(p, q) for q in range(1, 4) for p in range(-3, 4) if max(abs(p), q) <= 3}
    assert len(ps[:-1]) == len(set(ps[:-1]))


def test_quartic_search_and_height():
    q = QuarticModel(1, 0, 0, 0, 1)
    assert quartic_search(q, 5) == [(F(0), F(1)), (F(0), F(-1))]
    assert naive_height((F(-7, 3), F(1))) == 7
