"""Dyadic arithmetic: canonical form, exact laws, parsing."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sharedsched.dyadic import ONE, ZERO, Dyadic, as_dyadic

dyadics = st.builds(
    Dyadic, st.integers(-(10**9), 10**9), st.integers(min_value=0, max_value=40)
)


def test_canonical_form():
    assert Dyadic(12, 2) == Dyadic(3)
    assert Dyadic(12, 2).exponent == 0
    assert Dyadic(6, 1).mantissa == 3
    assert Dyadic(0, 7) == ZERO
    assert Dyadic(0, 7).exponent == 0
    assert Dyadic(5, 0).mantissa == 5


def test_constructor_rejections():
    with pytest.raises(ValueError):
        Dyadic(1, -1)
    with pytest.raises(TypeError):
        Dyadic(1.5)  # type: ignore[arg-type]
    with pytest.raises(TypeError):
        Dyadic(True)  # type: ignore[arg-type]


def test_immutable():
    d = Dyadic(3, 1)
    with pytest.raises(AttributeError):
        d.mantissa = 4  # type: ignore[misc]


def test_spec_arithmetic_examples():
    assert Dyadic(1, 1) + Dyadic(1, 2) == Dyadic(3, 2)  # 1/2 + 1/4 = 3/4
    assert Dyadic(5).half() == Dyadic(5, 1)  # halve(5) = 5/2
    assert Dyadic(3, 3) * Dyadic(4) == Dyadic(3, 1)  # 3/8 * 4 = 3/2


@pytest.mark.parametrize(
    "text,expected",
    [
        ("4", Dyadic(4)),
        ("-3", Dyadic(-3)),
        ("7/2", Dyadic(7, 1)),
        ("3/4", Dyadic(3, 2)),
        ("-5/8", Dyadic(-5, 3)),
        ("3/2^5", Dyadic(3, 5)),
        ("0/8", ZERO),
        ("6/2", Dyadic(3)),
        ("5/1", Dyadic(5)),
    ],
)
def test_parse(text, expected):
    assert Dyadic.from_string(text) == expected


@pytest.mark.parametrize("text", ["1/3", "1.5", "", "a", "1/0", "3/6", "+3", "1 /2", "2^3"])
def test_parse_rejections(text):
    with pytest.raises(ValueError):
        Dyadic.from_string(text)


def test_str_forms():
    assert str(Dyadic(3, 2)) == "3/4"
    assert str(Dyadic(-7, 1)) == "-7/2"
    assert str(Dyadic(5)) == "5"
    assert str(ZERO) == "0"


def test_as_dyadic_coercions():
    assert as_dyadic(4) == Dyadic(4)
    assert as_dyadic("7/2") == Dyadic(7, 1)
    assert as_dyadic(ONE) is ONE
    with pytest.raises(TypeError):
        as_dyadic(1.5)
    with pytest.raises(TypeError):
        as_dyadic(True)


def test_int_interop():
    assert Dyadic(4) == 4
    assert Dyadic(9, 1) > 4
    assert 4 < Dyadic(9, 1)
    assert Dyadic(3, 1) + 1 == Dyadic(5, 1)
    assert 1 - Dyadic(1, 2) == Dyadic(3, 2)
    assert 2 * Dyadic(3, 2) == Dyadic(3, 1)
    assert hash(Dyadic(4)) == hash(4)
    assert hash(Dyadic(3, 1)) == hash(Fraction(3, 2))


def test_mul_pow2():
    assert Dyadic(3).mul_pow2(-2) == Dyadic(3, 2)
    assert Dyadic(3, 2).mul_pow2(2) == Dyadic(3)
    assert Dyadic(3, 1).mul_pow2(4) == Dyadic(24)
    assert ZERO.mul_pow2(5) == ZERO


@given(dyadics, dyadics)
def test_add_sub_roundtrip(a, b):
    assert (a + b) - b == a


@given(dyadics, dyadics, dyadics)
def test_mul_distributes(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(dyadics, dyadics)
def test_comparisons_match_fractions(a, b):
    fa = Fraction(a.mantissa, 1 << a.exponent)
    fb = Fraction(b.mantissa, 1 << b.exponent)
    assert (a < b) == (fa < fb)
    assert (a == b) == (fa == fb)
    assert (a >= b) == (fa >= fb)


@given(dyadics)
def test_string_roundtrip(a):
    assert Dyadic.from_string(str(a)) == a


@given(dyadics)
def test_half_and_neg(a):
    assert a.half() + a.half() == a
    assert a + (-a) == ZERO
    assert abs(a).sign in (0, 1)


@given(dyadics, st.integers(-20, 20))
def test_mul_pow2_matches_fraction(a, k):
    expected = Fraction(a.mantissa, 1 << a.exponent) * Fraction(2) ** k
    got = a.mul_pow2(k)
    assert Fraction(got.mantissa, 1 << got.exponent) == expected
