import random

import pytest
from hypothesis import given, settings

from conftest import G, polys
from leibniz.errors import DegreeCapExceeded, DivisionByZero, ExpressionSyntaxError, NegativeExponent
from leibniz.generators import random_poly
from leibniz.parsing import parse_poly, parse_scalar, print_poly, print_scalar
from leibniz.poly import Poly
from leibniz.scalars import ScalarElem

t1 = ScalarElem.t(1)


def test_parse_examples():
    assert parse_poly("(z-1)^2*(z+2)") == Poly([2, -3, 0, 1])
    assert parse_poly("i*z^2") == Poly([0, 0, G(0, 1)])
    assert parse_scalar("3/4") == G(3) / 4
    assert parse_scalar("2*i") == G(0, 2)
    assert parse_scalar("t1/(t1+1)") * (t1 + 1) == t1


def test_print_examples():
    assert print_poly(parse_poly("z^3 - 3*z + 2")) == "z^3 - 3*z + 2"
    assert print_poly(Poly()) == "0"
    assert print_poly(parse_poly("i*z^2")) == "i*z^2"


@pytest.mark.parametrize(
    "text, printed",
    [
        ("(1+i)*z^2 - 1/2", "(1 + i)*z^2 - 1/2"),
        ("-z", "-z"),
        ("t1*z^2 + t1^2", "t1*z^2 + t1^2"),
        ("(t1+1)*z", "(t1 + 1)*z"),
        ("-2*i*z + 3", "-2*i*z + 3"),
    ],
)
def test_print_forms(text, printed):
    assert print_poly(parse_poly(text)) == printed


def test_print_scalar_fraction():
    assert print_scalar(parse_scalar("t1/(t1+1)")) == "(t1)/(t1 + 1)"


def test_negative_exponent_position():
    with pytest.raises(NegativeExponent) as exc:
        parse_poly("z^-1")
    assert exc.value.position == 2


def test_degree_cap():
    with pytest.raises(DegreeCapExceeded) as exc:
        parse_poly("z^65")
    assert exc.value.position == 1
    with pytest.raises(DegreeCapExceeded):
        parse_poly("z^40*z^40")
    assert parse_poly("z^64")


@pytest.mark.parametrize(
    "text, position",
    [("(z+1", 4), ("z+", 2), ("2 z", 2), ("z$", 1), ("t4", 0), ("", 0), ("z/(z+1)", 2)],
)
def test_syntax_errors(text, position):
    with pytest.raises(ExpressionSyntaxError) as exc:
        parse_poly(text)
    assert exc.value.position == position
    assert "position" in str(exc.value)


def test_transcendental_count_respected():
    with pytest.raises(ExpressionSyntaxError):
        parse_poly("t2", m=1)
    assert parse_poly("t2", m=2)


def test_scalar_rejects_z_and_literal_zero_division():
    with pytest.raises(ExpressionSyntaxError):
        parse_scalar("z")
    with pytest.raises(DivisionByZero):
        parse_scalar("1/0")


def test_roundtrip_500_random():
    rng = random.Random(10)
    for _ in range(500):
        p = random_poly(rng, 6, m=2)
        assert parse_poly(print_poly(p)) == p


@settings(max_examples=200, deadline=None)
@given(polys())
def test_roundtrip_hypothesis(p):
    assert parse_poly(print_poly(p)) == p
