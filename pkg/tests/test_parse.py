from fractions import Fraction

import pytest
from hypothesis import given, settings

from helpers import polys
from krauto.parse import BinOp, Neg, Num, ParseError, Pow, Var, parse_expr, parse_poly
from krauto.poly import MPoly, format_poly, t, x, z


def test_examples():
    assert parse_poly("z^2 + t^3") == z**2 + t**3
    assert parse_poly("z*(z*t^2 + 1)") == z * (z * t**2 + 1)
    assert parse_poly("0") == MPoly()


def test_rationals_and_signs():
    assert parse_poly("1/2*t") == t * Fraction(1, 2)
    assert parse_poly("-z^2") == -(z**2)
    assert parse_poly("-(z+t)^2") == -((z + t) ** 2)
    assert parse_poly("- 2*x*t") == -2 * x * t
    assert parse_poly("x - -1") == x + 1


def test_whitespace_insensitive():
    assert parse_poly(" z ^ 2\t+\nt^3 ") == parse_poly("z^2+t^3")


def test_ast_shape():
    node = parse_expr("-z^2 + 3/4")
    assert node == BinOp("+", Neg(Pow(Var("z"), 2)), Num(Fraction(3, 4)))


@pytest.mark.parametrize("text, offset", [
    ("2z", 1),
    ("z t", 2),
    ("z +", 3),
    ("(z", 2),
    ("z^t", 2),
    ("w", 0),
    ("z**2", 2),
    ("1/0", 0),
    ("", 0),
    ("z)", 1),
])
def test_errors_carry_offset(text, offset):
    with pytest.raises(ParseError) as info:
        parse_poly(text)
    assert info.value.offset == offset


def test_unknown_variable_message():
    with pytest.raises(ParseError, match="unknown variable"):
        parse_poly("z + q")


@given(polys("xyzts", 3, 5))
@settings(max_examples=100, deadline=None)
def test_print_parse_roundtrip(p):
    assert parse_poly(format_poly(p)) == p
