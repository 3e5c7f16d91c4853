from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from convexoid.common import ConvexoidError
from convexoid.gamma import (
    GAMMA,
    ONE,
    GammaPoly,
    disk_member,
    format_rat,
    gamma_shift,
    parse_poly,
    parse_rat,
    poly_add,
    poly_eval,
    poly_mul,
    poly_neg,
)

from conftest import small_polys


def test_evaluation_examples():
    assert poly_eval(GAMMA * 2, Fraction(1, 2)) == 1
    assert poly_eval(GAMMA + GAMMA**2, 1) == 2
    assert poly_eval(GammaPoly.monomial(3, 2), Fraction(1, 2)) == Fraction(3, 4)


def test_disk_membership():
    assert disk_member(-1, "DQ")
    assert not disk_member(Fraction(3, 2), "DQ")
    assert not disk_member(Fraction(1, 3), "DZhalf")
    assert disk_member(Fraction(-5, 8), "DZhalf")


def test_ring_operations():
    assert poly_mul(GAMMA * 2, GAMMA * 2) == GammaPoly.monomial(4, 2)
    assert gamma_shift(poly_add(ONE, GAMMA), 1) == GAMMA + GAMMA**2
    assert poly_neg(GAMMA) == GammaPoly.monomial(-1, 1)


def test_zero_coefficients_are_dropped():
    assert GammaPoly.from_dict({0: 0, 3: 0}).is_zero()
    assert (GAMMA - GAMMA) == GammaPoly()
    with pytest.raises(ConvexoidError):
        GammaPoly(((1, 0),))


def test_parse_roundtrip():
    for text in ["3g^2", "g + g^2", "-5g^3", "1", "0", "2g"]:
        f = parse_poly(text)
        assert parse_poly(str(f)) == f
    assert parse_poly("1 - g^-1").laurent
    with pytest.raises(ConvexoidError):
        parse_poly("3x")


def test_rationals():
    assert parse_rat("-3/4") == Fraction(-3, 4)
    assert format_rat(Fraction(6, 3)) == "2"
    with pytest.raises(ConvexoidError):
        parse_rat("1/0")


def test_monomial_inverse_is_laurent():
    inv = (GAMMA * 2).inverse()
    assert inv.laurent
    assert (inv * (GAMMA * 2).as_laurent()).as_plain() == ONE


@given(small_polys(), small_polys(), small_polys())
def test_commutative_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + (-f) == GammaPoly()


@given(small_polys(), small_polys(), st.fractions(min_value=-3, max_value=3, max_denominator=8))
def test_evaluation_is_a_ring_map(f, g, t):
    assert poly_eval(f * g, t) == poly_eval(f, t) * poly_eval(g, t)
    assert poly_eval(f + g, t) == poly_eval(f, t) + poly_eval(g, t)


@given(small_polys(), st.integers(0, 5))
def test_shift_is_multiplication_by_a_power(f, k):
    assert gamma_shift(f, k) == f * GAMMA**k


@given(small_polys())
def test_json_roundtrip(f):
    assert GammaPoly.from_json(f.to_json()) == f
