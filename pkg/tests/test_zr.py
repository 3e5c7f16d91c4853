from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexoid.common import ConvexoidError, PreconditionError
from convexoid.ostrowski import ValuationRing, arch_valuation, trivial_valuation, zp_valuation
from convexoid.places import GENERIC, INFINITY, finite, primes_up_to
from convexoid.structures import dq
from convexoid.zr import (
    OpenSet,
    dominating_point,
    restriction_factors_check,
    section_member,
    stalk,
    support,
    zr_points,
    zr_specializations,
)

F = Fraction
WHOLE = OpenSet()
NO_INF = OpenSet.of([INFINITY])
X2 = OpenSet(x2=True)

places = st.sampled_from([finite(p) for p in primes_up_to(13)] + [INFINITY])
opens = st.builds(lambda s: OpenSet.of(s), st.sets(places, max_size=4))
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=40)


def test_points():
    pts = [w.place for w in zr_points(5)]
    assert pts == [GENERIC, finite(2), finite(3), finite(5), INFINITY]
    assert finite(2) not in [w.place for w in zr_points(5, x2=True)]
    assert [w.place for w in zr_points(0)] == [GENERIC, INFINITY]
    assert [w.stalk_tag for w in zr_points(3)] == ["Q", "Zp(2)", "Zp(3)", "ArchDisk"]
    assert len(zr_specializations(zr_points(5))) == 4


def test_stalks():
    assert stalk(INFINITY).member(F(-1)) and not stalk(INFINITY).member(F(3, 2))
    assert stalk(INFINITY).in_maximal(F(1, 2)) and stalk(INFINITY).is_unit(F(-1))
    z3 = stalk(finite(3))
    assert z3.member(F(5, 2)) and not z3.member(F(1, 3)) and z3.in_maximal(F(6, 5))
    assert stalk(GENERIC).member(F(7, 9)) and stalk(GENERIC).is_unit(F(7, 9))
    assert not stalk(GENERIC).is_unit(0)


def test_sections_examples():
    assert {q for q in [F(a, b) for a in range(-3, 4) for b in range(1, 4)] if section_member(q, WHOLE)} == {
        F(-1), F(0), F(1)
    }
    assert section_member(17, NO_INF) and not section_member(F(1, 3), NO_INF)
    assert section_member(F(3, 4), X2) and not section_member(F(5, 4), X2)
    assert section_member(F(1, 3), OpenSet.of([finite(3)]))
    assert not section_member(F(4, 3), OpenSet.of([finite(3)]))
    assert section_member(F(100, 3), OpenSet.of([finite(3), INFINITY]))
    assert section_member(F(99, 7), OpenSet(empty=True))


@settings(max_examples=200)
@given(opens, rationals)
def test_sections_are_intersections_of_stalks(U, q):
    pts = [w.place for w in zr_points(50) if U.contains(w.place)]
    assert section_member(q, U) == all(stalk(p).member(q) for p in pts)


def test_open_set_lattice():
    a = OpenSet.of([finite(3)])
    b = OpenSet.of([INFINITY])
    assert a.intersect(b) == OpenSet.of([finite(3), INFINITY])
    assert a.union(b) == WHOLE
    assert a.intersect(b).subset_of(a) and not a.subset_of(b)
    assert X2.subset_of(WHOLE) and not WHOLE.subset_of(X2)
    assert OpenSet(empty=True).subset_of(a)
    assert a.intersect(OpenSet(empty=True)).empty
    with pytest.raises(PreconditionError):
        OpenSet.of([GENERIC])
    with pytest.raises(PreconditionError):
        OpenSet.of([finite(2)], x2=True)


def test_support_examples():
    assert support(X2, [F(1, 2)]) == OpenSet.of([INFINITY], x2=True)
    assert support(NO_INF, [3]) == OpenSet.of([INFINITY, finite(3)])
    assert support(WHOLE, [1]) == WHOLE
    assert support(NO_INF, [6, 10]) == OpenSet.of([INFINITY, finite(2)])
    assert support(WHOLE, [0]).empty
    with pytest.raises(PreconditionError):
        support(WHOLE, [2])
    with pytest.raises(PreconditionError):
        support(WHOLE, [])


@settings(max_examples=150)
@given(opens, st.lists(st.integers(-30, 30), min_size=1, max_size=3), st.integers(-30, 30))
def test_support_properties(U, gens, extra):
    U = U.intersect(NO_INF)
    s = support(U, gens)
    assert s.subset_of(U)
    # adding a generator can only enlarge the support
    assert s.subset_of(support(U, gens + [extra]))
    # the support of a product is the meet of supports
    if len(gens) == 1:
        assert support(U, [gens[0] * extra]) == s.intersect(support(U, [extra]))


def test_dominating_point():
    assert dominating_point(zp_valuation(7)).place == finite(7)
    assert dominating_point(arch_valuation()).place == INFINITY
    triv = dominating_point(trivial_valuation())
    assert triv.place == GENERIC and triv.flagged
    assert not dominating_point(zp_valuation(2)).flagged
    with pytest.raises(PreconditionError):
        dominating_point(zp_valuation(2), x2=True)
    bogus = ValuationRing(lambda x: x.denominator == 1, dq())
    with pytest.raises(PreconditionError):
        dominating_point(bogus)


def test_dominating_point_is_injective():
    rings = [zp_valuation(p) for p in primes_up_to(50)] + [arch_valuation(), trivial_valuation()]
    images = [dominating_point(R).place for R in rings]
    assert len(set(images)) == len(images)
    assert set(images) == {w.place for w in zr_points(50)}


def test_restriction_factors():
    rep = restriction_factors_check(NO_INF, OpenSet.of([INFINITY, finite(3)]))
    assert rep.passed and rep.checked > 0
    rep = restriction_factors_check(X2, OpenSet.of([INFINITY], x2=True))
    assert rep.passed
    with pytest.raises(PreconditionError):
        restriction_factors_check(OpenSet.of([finite(3)]), WHOLE)


def test_global_sections_and_restriction_of_members():
    probes = [F(a, b) for a in range(-20, 21) for b in range(1, 21)]
    assert sorted({q for q in probes if section_member(q, WHOLE)}) == [-1, 0, 1]
    U, V = NO_INF, OpenSet.of([INFINITY, finite(5)])
    for q in probes:
        if section_member(q, U):
            assert section_member(q, V)
