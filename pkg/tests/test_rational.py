from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trace_pi.errors import MalformedInputError
from trace_pi.rational import fraction_to_json, format_fraction, parse_rational_list, to_fraction


@pytest.mark.parametrize("value, want", [("3/6", Fraction(1, 2)), (-2, Fraction(-2)), (" 7 ", Fraction(7)),
                                         (Fraction(2, 4), Fraction(1, 2))])
def test_to_fraction(value, want):
    assert to_fraction(value) == want


@pytest.mark.parametrize("bad", [0.5, "0.5", "1e3", "1/0", "abc", True, None])
def test_inexact_refused(bad):
    with pytest.raises(MalformedInputError):
        to_fraction(bad)


def test_list():
    assert parse_rational_list("1,0,-1/2") == [1, 0, Fraction(-1, 2)]
    for bad in ("", "1,,2", "1,"):
        with pytest.raises(MalformedInputError):
            parse_rational_list(bad)


@given(st.fractions())
def test_format_round_trip(q):
    assert to_fraction(format_fraction(q)) == q
    j = fraction_to_json(q)
    assert (isinstance(j, int)) == (q.denominator == 1)
    assert to_fraction(j) == q
