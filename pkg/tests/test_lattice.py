from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from logfano.lattice import (
    DivisorClass,
    anticanonical,
    curve_from_coeffs,
    divisor_from_coeffs,
    pair,
    standard_curve,
)


def test_anticanonical_examples():
    assert anticanonical(3, 4) == DivisorClass.uniform(3, 4, 4, -2)
    assert anticanonical(2, 0) == DivisorClass(2, 0, Fraction(3), ())
    assert anticanonical(7, 10) == DivisorClass.uniform(7, 10, 8, -6)


def test_standard_curves():
    assert standard_curve("L_pair", 3, 4, 1, 2) == curve_from_coeffs(3, [1, -1, -1, 0, 0])
    assert standard_curve("R", 3, 4, 3) == curve_from_coeffs(3, [0, 0, 0, 1, 0])
    assert standard_curve("L_single", 3, 2, 2) == curve_from_coeffs(3, [1, 0, -1])
    with pytest.raises(IndexError):
        standard_curve("R", 3, 4, 5)
    with pytest.raises(ValueError):
        standard_curve("L_pair", 3, 4, 2, 2)


def test_line_relation():
    # L = L_ij + R_i + R_j
    n, k = 4, 6
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            total = standard_curve("L_pair", n, k, i, j) + standard_curve("R", n, k, i) + standard_curve("R", n, k, j)
            assert total == standard_curve("L", n, k)


@pytest.mark.parametrize("n", range(2, 9))
def test_pairing_examples(n):
    assert pair(anticanonical(n, n + 1), standard_curve("R", n, n + 1, 1)) == n - 1
    assert pair(DivisorClass.hyperplane(n, 3), standard_curve("L", n, 3)) == 1
    assert pair(anticanonical(3, 4), standard_curve("R", 3, 4, 2)) == 2


def test_mismatch_rejected():
    with pytest.raises(ValueError):
        pair(anticanonical(3, 4), standard_curve("R", 3, 5, 1))
    with pytest.raises(ValueError):
        anticanonical(3, 4) + anticanonical(3, 5)
    with pytest.raises(ValueError):
        DivisorClass(1, 0, Fraction(1), ())


coeff = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@given(st.lists(coeff, min_size=4, max_size=4), st.lists(coeff, min_size=4, max_size=4),
       st.lists(coeff, min_size=4, max_size=4), coeff)
def test_pairing_bilinear(a, b, c, s):
    d1, d2 = divisor_from_coeffs(3, a), divisor_from_coeffs(3, b)
    cv = curve_from_coeffs(3, c)
    assert pair(d1 + d2, cv) == pair(d1, cv) + pair(d2, cv)
    assert pair(d1.scale(s), cv) == s * pair(d1, cv)
    assert pair(d1, cv.scale(s)) == s * pair(d1, cv)


@given(st.lists(coeff, min_size=1, max_size=6))
def test_divisor_json_round_trip(coeffs):
    d = divisor_from_coeffs(4, coeffs)
    assert DivisorClass.from_json(d.to_json()) == d
    data = d.to_json()
    assert set(data) == {"n", "k", "h", "e"} and all(isinstance(x, str) for x in data["e"])
