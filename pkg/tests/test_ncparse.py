import pytest
from hypothesis import given

from nchess.freealg import NcPoly
from nchess.ncparse import ParseError, parse, to_string

from conftest import polys


def test_examples():
    p1 = parse("x1*x2^3 + x2 + x3*x1*x2", 3)
    assert p1 == NcPoly(3, {(0, 1, 1, 1): 1, (1,): 1, (2, 0, 1): 1})
    assert parse("3 + x1^2", 1) == NcPoly(1, {(): 3, (0, 0): 1})
    assert parse("T(x1*x2)", 2) == parse("x2*x1", 2)


def test_printing():
    assert to_string(NcPoly.zero(2)) == "0"
    assert to_string(parse("x2*x1", 2)) == "x2*x1"
    assert to_string(parse("2/4*x1 - 3", 1)) == "-3 + 1/2*x1"


@pytest.mark.parametrize("text", ["x1 +", "x4", "(x1", "x1^", "1/0*x1", "h1", "", "x1 ** x2"])
def test_errors(text):
    with pytest.raises(ParseError):
        parse(text, 3)


def test_error_position():
    with pytest.raises(ParseError) as exc:
        parse("x1 +\n  * x2", 2)
    assert "line 2" in str(exc.value)


def test_h_letters_opt_in():
    assert parse("h1*x1", 1, allow_h=True).uses_h()


@given(polys())
def test_round_trip(p):
    s = to_string(p)
    assert parse(s, p.g) == p
    assert to_string(parse(s, p.g)) == s
