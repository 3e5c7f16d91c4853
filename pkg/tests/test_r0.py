from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexoid.common import PreconditionError
from convexoid.gamma import GAMMA, ONE, GammaPoly, parse_poly, poly_eval
from convexoid.r0 import (
    D_ONE,
    SaturationBudget,
    ball_certificate,
    d_gsum,
    dyadic_norm,
    enumerate_r0,
    enumeration_to_json,
    graded_part,
    in_ball,
    loc_2gamma_member,
    map_to_dzhalf,
    map_to_z,
    parse_sexpr,
    preimage_witness,
    r0_member,
)

from conftest import dyadics, small_polys

F = Fraction


def naive_closure(budget: SaturationBudget) -> set[GammaPoly]:
    """Fixpoint of {0, 1} under negation, product and g(f + h) within the budget."""
    elems = {GammaPoly(), ONE}
    while True:
        new = set()
        for f in elems:
            new.add(-f)
            for h in elems:
                new.add(f * h)
                new.add((f + h).gamma_shift(1))
        new = {x for x in new if budget.admits(x)} - elems
        if not new:
            return elems
        elems |= new


@pytest.mark.parametrize("deg,height", [(1, 8), (2, 8), (2, 3), (3, 5), (3, 8), (2, 4)])
def test_enumeration_matches_naive_closure(deg, height):
    budget = SaturationBudget(deg, height)
    oracle = naive_closure(budget)
    assert set(enumerate_r0(budget, "saturate").elements) == oracle
    if budget.ball_regime:
        assert set(enumerate_r0(budget, "ball").elements) == oracle


def test_ball_route_needs_the_ball_regime():
    with pytest.raises(PreconditionError):
        enumerate_r0(SaturationBudget(3, 4), "ball")


def test_degree_one_and_named_elements():
    enum = enumerate_r0(SaturationBudget(1, 8))
    deg1 = {f for f in enum.homogeneous(1) if not f.is_zero()}
    assert deg1 == {GammaPoly.monomial(c, 1) for c in (1, -1, 2, -2)}
    big = enumerate_r0(SaturationBudget(4, 64))
    assert GammaPoly.monomial(3, 2) in big
    assert GAMMA + GAMMA**2 in big


def test_graded_parts():
    budget = SaturationBudget(3, 8)
    assert len(graded_part(1, budget)) == 5
    assert set(graded_part(2, budget)) == {GammaPoly()} | {
        GammaPoly.monomial(m, 2) for m in (-4, -3, -2, -1, 1, 2, 3, 4)
    }
    assert len(graded_part(3, budget)) == 17
    with pytest.raises(PreconditionError):
        graded_part(4, budget)


def test_membership():
    budget = SaturationBudget(4, 16)
    assert not r0_member(GammaPoly.monomial(3, 1), budget)
    assert not r0_member(GammaPoly.monomial(5, 2), budget)
    yes = r0_member(GammaPoly.monomial(-2, 1), budget)
    assert yes and yes.witness.replay() == GammaPoly.monomial(-2, 1)
    assert not r0_member(GammaPoly.monomial(3, 2), SaturationBudget(4, 2))


def test_certificates_replay():
    enum = enumerate_r0(SaturationBudget(3, 8))
    assert enum.verify_certificates() == []
    for f, der in enum.items():
        assert parse_sexpr(der.sexpr()).replay() == f


def test_saturation_derivations_are_shallowest():
    # every element first appears in the round equal to its derivation depth
    enum = enumerate_r0(SaturationBudget(2, 4), "saturate")
    depths = {f: der.depth() for f, der in enum.items()}
    assert depths[ONE] == 0
    assert depths[GAMMA] == 1  # g(1 + 0)
    assert depths[GammaPoly.monomial(2, 1)] == 1  # g(1 + 1)


def test_preimage_witness_examples():
    poly, der = preimage_witness(F(3, 4))
    assert poly == GammaPoly.monomial(3, 2)
    assert der.replay() == poly
    assert preimage_witness(1)[0] == ONE
    assert preimage_witness(F(-5, 8))[0] == GammaPoly.monomial(-5, 3)
    with pytest.raises(PreconditionError):
        preimage_witness(F(3, 2))


@given(dyadics(10))
def test_preimage_witness_hits_its_target(x):
    poly, der = preimage_witness(x)
    assert poly_eval(poly, F(1, 2)) == x
    assert der.replay() == poly


def test_maps_to_z_and_disk():
    assert map_to_z(GAMMA * 2) == 2 and map_to_dzhalf(GAMMA * 2) == 1
    assert map_to_z(GAMMA + GAMMA**2) == 2 and map_to_dzhalf(GAMMA + GAMMA**2) == F(3, 4)
    assert map_to_z(-GAMMA) == -1 and map_to_dzhalf(-GAMMA) == F(-1, 2)


@settings(max_examples=200)
@given(small_polys(4, 20))
def test_ball_elements_have_certificates(f):
    if in_ball(f):
        assert ball_certificate(f).replay() == f
        assert abs(map_to_dzhalf(f)) <= 1


@given(small_polys(3, 4), small_polys(3, 4))
def test_ball_is_closed_under_the_rules(f, h):
    if in_ball(f) and in_ball(h):
        assert in_ball(-f)
        assert in_ball(f * h)
        assert in_ball((f + h).gamma_shift(1))


def test_dyadic_norm():
    assert dyadic_norm(GammaPoly.monomial(3, 2)) == F(3, 4)
    assert dyadic_norm(ONE + GAMMA) == F(3, 2)


def test_localisation_at_two_gamma():
    inv = (GAMMA * 2).inverse()
    assert loc_2gamma_member(inv)
    assert loc_2gamma_member(GammaPoly.monomial(3, 2).as_laurent() * inv**2)
    assert not loc_2gamma_member(GammaPoly.monomial(3, 1).as_laurent())


def test_parse_sexpr_rejects_garbage():
    with pytest.raises(Exception):
        parse_sexpr("(GammaSum One")
    assert parse_sexpr(d_gsum(D_ONE, D_ONE).sexpr()).replay() == GammaPoly.monomial(2, 1)


def test_json_is_deterministic():
    b = SaturationBudget(2, 4)
    assert enumeration_to_json(enumerate_r0(b)) == enumeration_to_json(enumerate_r0(b))
    assert any(e["poly"] == "3g^2" for e in enumeration_to_json(enumerate_r0(b)))
