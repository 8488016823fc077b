from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from logfano.rational import as_fraction, format_rational, parse_csv_rationals, parse_rational


def test_parse_forms():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-4") == -4
    assert parse_rational(" 2/-4 ") == Fraction(-1, 2)


@pytest.mark.parametrize("bad", ["", "1/0", "0.5", "1e3", "a/b", "1//2"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_format_canonical():
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(7) == "7"
    assert format_rational("10/5") == "2"


def test_no_floats_or_bools():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(True)


def test_csv():
    assert parse_csv_rationals("1/2, 3,-1/3") == (Fraction(1, 2), Fraction(3), Fraction(-1, 3))


@given(st.fractions())
def test_round_trip(x):
    assert parse_rational(format_rational(x)) == x
