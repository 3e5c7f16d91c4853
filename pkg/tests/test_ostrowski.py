from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexoid.common import ConvexoidError, InvalidHypothesisError
from convexoid.ostrowski import (
    ARCH_DISK,
    FINITE_ODD,
    INVALID,
    TRIVIAL,
    CountingOracle,
    ValuationRing,
    arch_valuation,
    base_digits,
    classify,
    digit_expansion_check,
    known_valuation,
    oracle_for,
    trivial_valuation,
    valuation_axiom_check,
    zp_valuation,
)
from convexoid.places import GENERIC, INFINITY, finite, padic_order, primes_up_to
from convexoid.structures import check_axioms, z_with_u

F = Fraction


def test_known_valuations():
    R3 = known_valuation(finite(3))
    assert R3.member(F(1, 2)) and not R3.member(F(1, 3))
    Rinf = known_valuation(INFINITY)
    assert Rinf.member(F(1, 2)) and not Rinf.member(2)
    with pytest.raises(InvalidHypothesisError):
        known_valuation(finite(2))
    with pytest.raises(InvalidHypothesisError):
        known_valuation(GENERIC)


@pytest.mark.parametrize("R", [zp_valuation(5), zp_valuation(3), arch_valuation()], ids=str)
def test_valuation_axioms(R):
    rep = valuation_axiom_check(R, 1000)
    assert rep.passed, rep.to_json()
    assert check_axioms(R.structure, 300).passed


def test_broken_valuation_ring_is_caught():
    shifted = replace(z_with_u(1), boxplus=lambda args: args[0] + args[1] - 1, label="a+b-1")
    R = ValuationRing(
        member=lambda x: F(x).denominator % 2 == 1,
        structure=shifted,
        tag="Zp",
        p=2,
        abs_value=lambda x: F(2) ** (-padic_order(x, 2)),
    )
    rep = valuation_axiom_check(R, 500)
    assert not rep.passed
    assert rep.failures


def test_classification_examples():
    assert classify(oracle_for("zp:3"), 50).to_json() == {"classification": FINITE_ODD, "p": 3}
    assert classify(oracle_for("arch"), 50).to_json() == {"classification": ARCH_DISK}
    triv = classify(oracle_for("trivial"), 50)
    assert triv.kind == TRIVIAL and triv.reason
    assert classify(oracle_for("zp:2"), 50).kind == INVALID


def test_inconsistent_oracles_are_invalid():
    two_primes = lambda x: F(x).denominator % 3 != 0 and F(x).denominator % 5 != 0  # noqa: E731
    assert classify(two_primes, 50).kind == INVALID
    assert classify(lambda x: False, 50).kind == INVALID
    neither = lambda x: abs(F(x)) <= 1 and F(x) != F(1, 3)  # noqa: E731
    assert classify(neither, 50).kind == INVALID


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([p for p in primes_up_to(200) if p != 2]), st.integers(2, 300))
def test_classifier_is_correct_within_its_query_budget(p, bound):
    c = classify(oracle_for(f"zp:{p}"), bound)
    assert c.queries <= 4 * bound
    if p <= bound:
        assert (c.kind, c.p) == (FINITE_ODD, p)
    else:
        assert c.kind == TRIVIAL


def test_arch_query_count_at_bound_200():
    assert classify(oracle_for("arch"), 200).queries <= 800


def test_counting_oracle_caches():
    q = CountingOracle(lambda x: True)
    q(1), q(F(2, 2)), q(2)
    assert q.calls == 2


def test_oracle_parsing():
    with pytest.raises(ConvexoidError):
        oracle_for("zp:4")
    with pytest.raises(ConvexoidError):
        oracle_for("nope")


def test_digit_examples():
    r = digit_expansion_check(3, 2, 2)
    assert r.digits == [1, 0, 0, 1] and r.holds and all(r.eval_checks.values())
    assert digit_expansion_check(2, 3, 1).holds
    assert digit_expansion_check(7, 7, 1).digits == [0, 1]
    assert digit_expansion_check(7, 7, 1).holds


@given(st.integers(2, 12), st.integers(2, 12), st.integers(1, 6))
def test_digit_identity_property(b, a, n):
    r = digit_expansion_check(b, a, n)
    assert r.holds
    assert 2**r.m >= len(r.digits)
    assert sum(c * a**i for i, c in enumerate(r.digits)) == b**n


def test_base_digits():
    assert base_digits(9, 2) == [1, 0, 0, 1]
    assert base_digits(0, 5) == [0]
