import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from jacpair.bipoly import BiPoly, X, Y
from jacpair.errors import ExponentTooLarge, NegativeExponent, NonIntegerExponent, PolySyntaxError
from jacpair.parser import format_poly, parse_poly

from helpers import random_poly


def test_first_example_polynomial():
    p = parse_poly("x+y+x^2+y^15+2xy^15+y^30")
    assert p == X + Y + X**2 + Y**15 + 2 * X * Y**15 + Y**30
    assert (p.deg_y, p.deg_x) == (30, 2)


def test_zero_and_binomial():
    assert parse_poly("0").is_zero
    p = parse_poly("(x-y)^30")
    assert len(p) == 31
    assert all(p.coeff(k, 30 - k) == comb(30, k) * (-1) ** (30 - k) for k in range(31))


@pytest.mark.parametrize("text, expected", [
    ("2xy^15", 2 * X * Y**15),
    ("2*x*y^15", 2 * X * Y**15),
    ("-x^2", -(X**2)),
    ("x^2^2", X**4),
    ("3/4x", BiPoly({(1, 0): Fraction(3, 4)})),
    ("(x+1)(x-1)", X**2 - 1),
    ("2(x)y", 2 * X * Y),
    ("x^(1+1)", X**2),
    ("--x", X),
    ("x y", X * Y),
    ("1/2/2", BiPoly.const(Fraction(1, 4))),
])
def test_grammar(text, expected):
    assert parse_poly(text) == expected


@pytest.mark.parametrize("text, exc, pos", [
    ("x^-1", NegativeExponent, 2),
    ("x^(1/2)", NonIntegerExponent, 2),
    ("x^y", NonIntegerExponent, 2),
    ("x^1000001", ExponentTooLarge, 2),
    ("x +", PolySyntaxError, 3),
    ("(x", PolySyntaxError, 2),
    ("x)", PolySyntaxError, 1),
    ("z", PolySyntaxError, 0),
    ("", PolySyntaxError, 0),
    ("   ", PolySyntaxError, 3),
    ("x/y", PolySyntaxError, 1),
    ("x/0", PolySyntaxError, 1),
])
def test_errors_carry_position(text, exc, pos):
    with pytest.raises(exc) as info:
        parse_poly(text)
    assert info.value.position == pos


def test_format_examples():
    assert format_poly(BiPoly.zero()) == "0"
    assert format_poly(X**2 - Y**2) == "x^2 - y^2"
    assert format_poly(parse_poly("-1/2 + 3x^2y")) == "3*x^2*y - 1/2"


def test_round_trip_random():
    rng = random.Random(2024)
    for _ in range(500):
        p = random_poly(rng, 10, 10, 50, rational=True)
        assert parse_poly(format_poly(p)) == p


@given(st.lists(st.sampled_from(["x", "y", "2", "(", ")", "+", "-", "*", "^", "3"]), max_size=12))
@settings(max_examples=300)
def test_whitespace_insensitive(tokens):
    dense = "".join(tokens)
    spaced = " ".join(tokens)
    # juxtaposed digits would merge into one literal without spaces
    if any(a.isdigit() and b.isdigit() for a, b in zip(tokens, tokens[1:])):
        return
    try:
        a = parse_poly(dense)
    except PolySyntaxError:
        with pytest.raises(PolySyntaxError):
            parse_poly(spaced)
        return
    except OverflowError:
        return
    assert parse_poly(spaced) == a
