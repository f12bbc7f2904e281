import pytest

from galois_locus.errors import ParseError
from galois_locus.expr import parse_form, parse_map, parse_point, parse_rational
from galois_locus.field import field_make


def test_parse_form_reduces_coefficients(F7):
    f = parse_form("8*X^3 + Y^3 - Z^3", F7)
    assert f.to_str("XYZ") == "X^3 + Y^3 + 6*Z^3"


def test_parse_form_primitive_symbol():
    F = field_make(3, 2)
    f = parse_form("X^4 - g*Y^3*Z", F)
    assert f.terms[(0, 3, 1)] == F.neg(F.primitive)


def test_parse_form_errors(F7):
    for bad in ["X^3 + W", "X^3/Y", "X^3 +", ""]:
        with pytest.raises(ParseError):
            parse_form(bad, F7)


def test_parse_rational_and_map(F13):
    num, den = parse_rational("y^2/x", F13)
    assert num.to_str("xy") == "y^2" and den.to_str("xy") == "x"
    (nu, du), (nv, dv) = parse_map("(y^2/x, 3*y)", F13)
    assert nv.to_str("xy") == "3*y"
    with pytest.raises(ParseError):
        parse_map("(x, y, x)", F13)
    with pytest.raises(ParseError):
        parse_map("x", F13)
    with pytest.raises(ParseError):
        parse_rational("x/0", F13)


def test_parse_point(F7):
    assert parse_point("-1:1:0", F7) == (6, 1, 0)
    for bad in ["1:0", "a:b:c", "0:0:0"]:
        with pytest.raises(ParseError):
            parse_point(bad, F7)
