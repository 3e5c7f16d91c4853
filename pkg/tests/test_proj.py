from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexoid.common import ConvexoidError, PreconditionError
from convexoid.gamma import GAMMA, GammaPoly, poly_eval
from convexoid.ideals import Ideal, classify_prime, radical_contains
from convexoid.places import GENERIC, INFINITY, finite, primes_up_to
from convexoid.proj import (
    ProjOpen,
    chart_boxplus,
    chart_prime_contains,
    dehomogenize,
    homogeneous_prime_contains,
    laurent_overlap_structure,
    make_chart,
    proj_atlas,
    proj_points,
    r0_graded,
    sections,
    twist_phi,
    twist_phi_inverse,
)
from convexoid.structures import check_axioms, check_weak_hom, dzhalf

F = Fraction
G2 = GAMMA * 2


def test_dehomogenize_examples():
    assert dehomogenize(GammaPoly.monomial(3, 2), G2, 2) == F(3, 4)
    for m, n in [(1, 1), (-2, 1), (5, 3), (16, 4)]:
        assert dehomogenize(GammaPoly.monomial(m, n), GAMMA, n) == m
    assert dehomogenize(G2, G2, 1) == 1
    with pytest.raises(PreconditionError):
        dehomogenize(GammaPoly.monomial(3, 2), G2, 1)


def test_chart_boxplus_examples():
    assert chart_boxplus(G2, (F(3, 4), F(1, 4))) == F(1, 2)
    assert chart_boxplus(G2, (F(3, 4), F(1, 4)), route="target") == F(1, 2)
    assert chart_boxplus(GAMMA, (5, -7)) == -2
    assert chart_boxplus(G2, (F(5, 8), F(-5, 8))) == 0
    with pytest.raises(ConvexoidError):
        chart_boxplus(GAMMA, (1, 2, 3))


@pytest.mark.parametrize("f", [GAMMA, G2, GammaPoly.monomial(3, 2), GammaPoly.monomial(4, 2)], ids=str)
def test_routes_agree_and_axioms_hold(f):
    import random

    chart = make_chart(f)
    rng = random.Random(3)
    for _ in range(60):
        args = tuple(chart.ring.carrier.sample(rng) for _ in range(2**chart.d))
        assert chart_boxplus(f, args) == chart_boxplus(f, args, route="target")
    assert check_axioms(chart.ring, 300).passed


def test_chart_targets():
    assert make_chart(GAMMA).iso_target == "Z"
    assert make_chart(G2).iso_target == "DZhalf"
    assert make_chart(GammaPoly.monomial(4, 2)).iso_target == "DZhalf"
    assert make_chart(GammaPoly.monomial(3, 2)).iso_target == "Z[1/3]"
    with pytest.raises(PreconditionError):
        make_chart(GammaPoly.monomial(3, 1))
    with pytest.raises(PreconditionError):
        make_chart(GAMMA + GAMMA**2)


def test_lift_is_minimal():
    chart = make_chart(G2)
    a, n = chart.lift(F(3, 4))
    assert (a, n) == (GammaPoly.monomial(3, 2), 2)
    with pytest.raises(PreconditionError):
        chart.lift(F(3, 2))


def test_atlas():
    atlas = proj_atlas()
    assert [c.iso_target for c in atlas.charts] == ["Z", "DZhalf"]
    assert atlas.transitions[(0, 1)].twist_label == "g -> g/2"
    rep = atlas.check(200)
    assert rep.passed, rep.to_json()
    s01, s10 = atlas.sigma(0, 1), atlas.sigma(1, 0)
    for x in [F(3, 4), F(-7, 2), F(5)]:
        assert s10(s01(x)) == x


def test_twist_phi():
    g = GAMMA.as_laurent()
    assert twist_phi(g) == GammaPoly.from_dict({1: F(1, 2)}, laurent=True)
    L = laurent_overlap_structure()
    assert check_weak_hom(twist_phi, L, L, 200).passed
    f = GammaPoly.from_dict({-2: 3, 1: F(1, 2), 3: -1}, laurent=True)
    assert twist_phi_inverse(twist_phi(f)) == f
    assert poly_eval(twist_phi(f), 1) == poly_eval(f, F(1, 2))


def test_points_and_charts():
    pts = proj_points(7)
    assert pts.points == [GENERIC, finite(2), finite(3), finite(5), finite(7), INFINITY]
    assert finite(2) in pts.charts["D+(g)"] and finite(2) not in pts.charts["D+(2g)"]
    assert INFINITY in pts.charts["D+(2g)"] and INFINITY not in pts.charts["D+(g)"]
    assert all(GENERIC in v for v in pts.charts.values())
    assert pts.leq(finite(3), INFINITY) and not pts.leq(finite(2), INFINITY)
    assert set(pts.closed_points()) == {finite(2), INFINITY}


def test_homogeneous_primes_match_chart_primes():
    chart = make_chart(G2)
    window = [F(m, 2**n) for n in range(0, 6) for m in range(-(2**n), 2**n + 1)]
    for p in [q for q in primes_up_to(31) if q != 2]:
        assert classify_prime(Ideal(dzhalf(), (p,))) == finite(p)
        for x in window:
            assert chart_prime_contains(finite(p), chart, x) == radical_contains(
                Ideal(dzhalf(), (p,)), x
            )
    for x in window:
        assert chart_prime_contains(INFINITY, chart, x) == radical_contains(
            Ideal(dzhalf(), (F(1, 2),)), x
        )
    assert not homogeneous_prime_contains(GENERIC, GAMMA)
    assert homogeneous_prime_contains(INFINITY, GammaPoly.monomial(3, 2))
    assert not homogeneous_prime_contains(INFINITY, GammaPoly.monomial(4, 2))


def test_sections():
    whole = sections(ProjOpen(frozenset()))
    assert sorted(whole.finite_listing) == [-1, 0, 1] and not whole.has_convexoid_structure
    no_inf = sections(ProjOpen(frozenset({INFINITY})))
    assert no_inf.description == "Z" and no_inf.has_convexoid_structure
    assert no_inf.member(5) and not no_inf.member(F(1, 2))
    no_two = sections(ProjOpen(frozenset({finite(2)})))
    assert no_two.description == "DZhalf" and no_two.has_convexoid_structure
    assert no_two.member(F(3, 4)) and not no_two.member(2)
    both = sections(ProjOpen(frozenset({finite(2), finite(3), INFINITY})))
    assert both.description == "Z[1/6]" and both.member(F(5, 12)) and not both.member(F(1, 5))
    with pytest.raises(PreconditionError):
        ProjOpen(frozenset({finite(3)}))
    with pytest.raises(PreconditionError):
        ProjOpen(frozenset({GENERIC}))


@settings(max_examples=50)
@given(st.sets(st.sampled_from([finite(p) for p in primes_up_to(13)]), max_size=3),
       st.fractions(min_value=-4, max_value=4, max_denominator=30))
def test_sections_are_intersections_of_chart_sections(excl, q):
    U = ProjOpen(frozenset(excl) | {INFINITY})
    sec = sections(U)
    primes = {p.p for p in excl}
    expected = all(d in primes for d in _prime_divisors(q.denominator))
    assert sec.member(q) == expected


def _prime_divisors(n: int) -> set[int]:
    return {p for p in primes_up_to(n) if n % p == 0}


def test_graded_components():
    A = r0_graded()
    assert A.check_components(200) == []
    assert A.degree(GammaPoly.monomial(3, 2)) == 2
    with pytest.raises(ConvexoidError):
        A.degree(GAMMA + GAMMA**2)
