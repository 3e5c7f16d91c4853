from fractions import Fraction

import pytest

from convexoid.common import ConvexoidError, PreconditionError
from convexoid.embedding import (
    F1ProjSpace,
    MonomialPrime,
    apply_monoid_map,
    chart_monoid_map,
    default_places,
    fd_image,
    fd_image_via_chart,
    linear_system,
    product_embedding,
    proj_r0_leq,
    simplex_config,
)
from convexoid.places import GENERIC, INFINITY, finite, primes_up_to
from convexoid.r0 import SaturationBudget, graded_part

F = Fraction


@pytest.mark.parametrize("d,size", [(1, 5), (2, 9), (3, 17)])
def test_linear_system(d, size):
    L = linear_system(d)
    assert len(L.elements) == size
    assert set(L.elements) == set(graded_part(d, SaturationBudget(max_degree=d, max_height=2**d)))
    assert L.closed_under_negation()
    assert len(L.coordinates()) == 2**d


def test_fd_image_examples():
    assert fd_image(finite(3), 2).to_json() == [3]
    assert fd_image(INFINITY, 2).to_json() == [1, 2, 3]
    assert fd_image(finite(5), 2).to_json() == []
    assert fd_image(finite(2), 1).to_json() == [2]
    assert fd_image(GENERIC, 4).is_generic()
    assert fd_image(finite(2), 3).to_json() == [2, 4, 6, 8]
    with pytest.raises(PreconditionError):
        fd_image(INFINITY, 0)


def test_chart_maps():
    assert chart_monoid_map(2, 4)[3] == F(3, 4)
    assert chart_monoid_map(1, 1)[2] == 2
    assert apply_monoid_map(chart_monoid_map(2, 4), {1: 2, 2: 1}) == F(1, 32)
    with pytest.raises(PreconditionError):
        chart_monoid_map(2, 5)
    with pytest.raises(ConvexoidError):
        apply_monoid_map(chart_monoid_map(1, 1), {1: -1})


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_chart_route_matches_closed_form(d):
    for place in [GENERIC, INFINITY] + [finite(p) for p in primes_up_to(2**d + 3)]:
        assert fd_image_via_chart(place, d) == fd_image(place, d)


def test_monomial_primes():
    assert len(F1ProjSpace(3).points()) == 7
    with pytest.raises(ConvexoidError):
        MonomialPrime(2, frozenset({1, 2}))
    with pytest.raises(ConvexoidError):
        MonomialPrime(2, frozenset({3}))
    a = MonomialPrime(3, frozenset({1}))
    b = MonomialPrime(3, frozenset({1, 3}))
    assert a.leq(b) and not b.leq(a)
    assert b.label() == "(x1,x3)" and MonomialPrime(3, frozenset()).label() == "(0)"


@pytest.mark.parametrize("n,points,covers", [(0, 1, 0), (1, 3, 2), (2, 7, 9), (3, 15, 28)])
def test_simplex_counts(n, points, covers):
    cfg = simplex_config(n)
    assert len(cfg.points) == points
    assert len(cfg.covers) == covers


def test_simplex_output():
    cfg = simplex_config(2)
    js = cfg.to_json()
    assert js["points"][0] == "(0)"
    assert js["points"][-3:] == ["(x0,x1)", "(x0,x2)", "(x1,x2)"]
    assert ["(x0)", "(x0,x1)"] in js["covers"]
    dot = cfg.to_dot()
    assert dot.startswith("digraph simplex {")
    assert dot == simplex_config(2).to_dot()
    assert dot.count("->") == 9


def test_proj_r0_order():
    assert proj_r0_leq(GENERIC, INFINITY) and proj_r0_leq(GENERIC, finite(2))
    assert proj_r0_leq(finite(3), INFINITY)
    assert not proj_r0_leq(finite(2), INFINITY)
    assert not proj_r0_leq(INFINITY, finite(3))
    assert not proj_r0_leq(finite(3), finite(5))


@pytest.mark.parametrize("D", [2, 3, 4, 6])
def test_product_embedding_passes(D):
    rep = product_embedding(default_places(D), D)
    assert rep.passed, rep.to_json()


def test_product_embedding_collision_when_too_short():
    rep = product_embedding([finite(3), finite(5)], 1)
    assert not rep.injective
    assert rep.collisions == [(finite(3), finite(5))]


def test_generic_and_infinity_are_separated():
    rep = product_embedding([GENERIC, INFINITY], 1)
    assert rep.injective
    assert rep.images[GENERIC][0].is_generic()
    assert rep.images[INFINITY][0].to_json() == [1]


def test_embedding_json_is_deterministic():
    a = product_embedding(default_places(3), 3).to_json()
    b = product_embedding(list(reversed(default_places(3))), 3).to_json()
    assert a == b
