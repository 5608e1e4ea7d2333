from fractions import Fraction as F
from math import prod

import pytest
from hypothesis import given, strategies as st

from ecdioph.exactnum import (
    as_rational, factorize, fmt_rational, integer_roots, parse_rational, primitive_integers,
    rational_roots, rational_square_root, squarefree_decompose, squarefree_divisors,
)


@pytest.mark.parametrize("text,value", [("3/4", F(3, 4)), ("-7", F(-7)), ("10/-4", F(-5, 2)), (" 12 ", F(12))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["", "1.5", "1/0", "a/b", "1/2/3"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_fmt_rational():
    assert fmt_rational(F(6, 3)) == "2"
    assert fmt_rational(F(-3, 9)) == "-1/3"
    assert as_rational("5/10") == F(1, 2)


@given(st.fractions())
def test_format_parse_roundtrip(q):
    assert parse_rational(fmt_rational(q)) == q


@given(st.integers(min_value=-10**12, max_value=10**12).filter(bool))
def test_squarefree_decompose(n):
    d, u = squarefree_decompose(n)
    assert d * u * u == n
    assert all(e == 1 for e in factorize(d).values()) or abs(d) == 1


@pytest.mark.parametrize("n,expected", [(12, (3, 2)), (-50, (-2, 5)), (1, (1, 1)), (2**2 * 1000003**2 * 7, (7, 2000006))])
def test_squarefree_known(n, expected):
    assert squarefree_decompose(n) == expected


def test_rational_square_root():
    assert rational_square_root(F(49, 36)) == F(7, 6)
    assert rational_square_root(F(2)) is None
    assert rational_square_root(F(-4)) is None


@given(st.lists(st.fractions(max_denominator=30).filter(lambda q: abs(q) < 50), min_size=1, max_size=4))
def test_rational_roots_of_product(roots):
    # expand prod (x - r)
    coeffs = [F(1)]
    for r in roots:
        coeffs = [a - r * b for a, b in zip(coeffs + [F(0)], [F(0)] + coeffs)]
    assert rational_roots(coeffs) == set(roots)


def test_integer_roots():
    assert integer_roots([1, 0, -25, 0]) == {-5, 0, 5}
    assert integer_roots([1, 0, 1]) == set()


def test_divisors_and_primitive():
    assert squarefree_divisors(12) == [-1, 1, -2, 2, -3, 3, -6, 6]
    assert prod(p**e for p, e in factorize(360).items()) == 360
    assert primitive_integers([F(1, 2), F(3, 4), F(-5, 6)]) == (6, 9, -10)
