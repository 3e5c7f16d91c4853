from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexoid.common import PreconditionError
from convexoid.r0 import map_to_dzhalf, map_to_z, r0_structure
from convexoid.structures import (
    agree_on_samples,
    check_axioms,
    check_weak_hom,
    descend_structure,
    descend_tower,
    dq,
    dzhalf,
    fundamental_constant,
    induce_structure,
    normalized_implies_ring_check,
    q_ring,
    structures_equivalent,
    trivial_monoid,
    twist,
    z_local,
    z_with_u,
)

F = Fraction


def test_fundamental_constants():
    assert fundamental_constant(z_with_u(1)) == 1
    assert fundamental_constant(dq()) == F(1, 2)
    assert fundamental_constant(dq(-1)) == F(-1, 2)
    assert fundamental_constant(z_with_u(5)) == 5
    assert fundamental_constant(z_with_u(F(1, 2))) == F(1, 2)


@pytest.mark.parametrize(
    "S",
    [dq(), dq(-1), dzhalf(), z_with_u(1), z_with_u(2), z_with_u(-3), z_with_u(F(1, 2)),
     q_ring(), z_local(5), trivial_monoid(("x", "y")), r0_structure()],
    ids=lambda S: S.label,
)
def test_catalogue_satisfies_axioms(S):
    rep = check_axioms(S, 300, seed=1)
    assert rep.passed, rep.to_json()


def test_broken_structure_is_caught_with_witness():
    Z = z_with_u(1)
    broken = replace(Z, boxplus=lambda args: args[0] + args[1] ** 2, label="a+b^2")
    rep = check_axioms(broken, 200)
    assert not rep.passed
    assert "symmetric" in rep.failures()
    args, permuted = rep.results["symmetric"].counterexample
    assert broken.boxplus(args) != broken.boxplus(permuted)


def test_induced_disk_is_the_four_term_mean():
    S = induce_structure(dq(), 2)
    assert S.d == 2
    assert S.boxplus((F(1), F(1, 2), F(-1, 3), F(0))) == (1 + F(1, 2) - F(1, 3)) / 4
    assert fundamental_constant(S) == F(1, 4)
    assert induce_structure(dq(), 1) is not None
    assert check_axioms(S, 300).passed


def test_induced_trivial_monoid_is_zero():
    S = induce_structure(trivial_monoid(("x",)), 3)
    assert S.boxplus(tuple([(1,)] * 8)) is None
    assert check_axioms(S, 100).passed


def test_induce_rejects_non_multiples():
    with pytest.raises(PreconditionError):
        induce_structure(induce_structure(dq(), 2), 3)


def test_descend_roundtrips():
    D = descend_structure(induce_structure(dq(), 2), F(1, 2), 1)
    assert agree_on_samples(D, dq(), 500) is None
    Z = descend_structure(induce_structure(z_with_u(1), 3), 1, 1)
    assert agree_on_samples(Z, z_with_u(1), 500) is None


def test_descend_tower_levels():
    tower = descend_tower(induce_structure(dq(), 3), F(1, 2), 1)
    assert sorted(tower) == [1, 2, 3]
    assert agree_on_samples(tower[2], induce_structure(dq(), 2), 300) is None


def test_descend_with_wrong_root_fails():
    with pytest.raises(PreconditionError):
        descend_structure(induce_structure(dq(), 2), F(1, 3), 1)


def test_twists():
    assert twist(z_with_u(1), 2).tag == z_with_u(2).tag
    assert agree_on_samples(twist(z_with_u(1), 2), z_with_u(2), 300) is None
    T = twist(dq(), 2)
    assert T.partial
    assert fundamental_constant(T) == 1
    S = dq()
    assert twist(S, 1) is S


def test_weak_homomorphisms_from_r0():
    assert check_weak_hom(map_to_dzhalf, r0_structure(), dzhalf(), 300).passed
    assert check_weak_hom(map_to_z, r0_structure(), z_with_u(1), 300).passed


def test_absolute_value_is_not_a_weak_hom():
    rep = check_weak_hom(abs, z_with_u(1), z_with_u(1), 300)
    assert not rep.passed
    assert not rep.gamma_identity_ok
    assert rep.counterexample is not None


def test_normalized_structures_are_rings():
    assert normalized_implies_ring_check(z_with_u(1), 300).passed
    assert normalized_implies_ring_check(twist(dq(), 2), 300).passed
    with pytest.raises(PreconditionError):
        normalized_implies_ring_check(dq())


def test_sign_variants_are_equivalent():
    assert structures_equivalent(dq(1), dq(-1), 200)
    assert not structures_equivalent(z_with_u(1), z_with_u(2), 200)


@settings(max_examples=25, deadline=None)
@given(st.integers(-4, 4).filter(bool), st.integers(1, 3))
def test_induced_integer_structures_satisfy_axioms(u, d):
    S = induce_structure(z_with_u(u), d)
    assert fundamental_constant(S) == u**d
    assert check_axioms(S, 60, seed=u).passed


def test_check_axioms_is_deterministic():
    a = check_axioms(dq(), 200, seed=7).to_json()
    b = check_axioms(dq(), 200, seed=7).to_json()
    assert a == b
