"""End-to-end tests for fundamental groups of diagonal curve-product quotients."""

import pytest

from prodquot.acceptance import _brute_force_torsion_count
from prodquot.cli import load_bundled_job
from prodquot.coset import todd_coxeter
from prodquot.orbifold import (
    GeneratingVector,
    Signature,
    enumerate_generating_vectors,
)
from prodquot.perm import GroupHom, cyclic_group, symmetric_group
from prodquot.presentation import abelian_invariants
from prodquot.product_quotient import (
    InvalidVector,
    build_curve_action,
    build_pi1,
    curve_group_image_words,
    freeness_check,
    lifted_orbifold_generators,
    structure_from_pi1,
    torsion_generators,
    verify_from_pi1,
)
from prodquot.rewrite import evaluate_word


def _actions(job_name: str):
    return load_bundled_job(job_name).actions


def _identity_action(group, vector):
    ident = GroupHom(group, group, [group.element_index(g) for g in group.generators])
    return build_curve_action(group, ident, vector)


# ---------------------------------------------------------------------------
# Two involutions on elliptic curves: the quotient is simply connected.


def test_kummer_surface_pipeline():
    actions = _actions("kummer")
    g = actions[0].group
    assert [a.genus for a in actions] == [1, 1]
    assert [a.acting_group.order for a in actions] == [2, 2]

    torsion = torsion_generators(actions)
    assert len(torsion) == 32
    assert _brute_force_torsion_count(actions) == 32

    res = build_pi1(actions, max_cosets=10_000)
    assert res.diagonal.table.index == g.order ** (len(actions) - 1)
    for lift in res.diagonal.lifts:
        assert lift.table.index == lift.action.acting_group.order
    assert todd_coxeter(res.presentation, (), max_cosets=10_000).index == 1

    inv = abelian_invariants(res.presentation)
    assert (inv.free_rank, inv.torsion) == (0, ())

    rep = structure_from_pi1(res, verify_index_bound=25)
    assert rep.quotient_signatures == (Signature.of(0), Signature.of(0))
    assert rep.t_index_bound == 1 and rep.t_index_exact
    assert rep.e_order_bound == 1 and rep.e_order_exact
    assert not rep.freeness
    assert rep.pi1_order == 1
    assert rep.verification is not None
    assert rep.verification.status == "FINITE"
    assert rep.verification.order == 1


def test_kummer_freeness_witness():
    actions = _actions("kummer")
    free = freeness_check(actions)
    assert not free.is_free
    assert free.witness == 1  # the involution fixes points on both factors


# ---------------------------------------------------------------------------
# A free involution on two genus-3 curves.


def test_free_action_pipeline():
    actions = _actions("free-z2-genus3")
    assert [a.genus for a in actions] == [3, 3]
    assert freeness_check(actions).is_free
    assert torsion_generators(actions) == []

    res = build_pi1(actions, max_cosets=10_000)
    inv = abelian_invariants(res.presentation)
    # Independent derivation: rank of the invariant part of H_1 of the two
    # genus-3 curves under the involution is 2+2 per factor.
    assert (inv.free_rank, inv.torsion) == (8, ())
    assert abelian_invariants(res.raw_presentation) == inv

    # The product of the curve groups has index |G| = 2, and the quotient
    # is the acting group.
    image = curve_group_image_words(res)
    assert todd_coxeter(res.presentation, image, max_cosets=20_000).index == 2

    rep = structure_from_pi1(res, verify_index_bound=25)
    assert rep.quotient_signatures == (Signature.of(2), Signature.of(2))
    assert rep.t_index_bound == 2 and rep.t_index_exact
    assert rep.e_order_bound == 1 and rep.e_order_exact
    assert rep.freeness
    assert rep.pi1_order is None
    assert rep.intersection_kernel_order == 1

    ver = verify_from_pi1(res, index_bound=25)
    assert ver.status == "FOUND"
    assert ver.index == 2
    # The index-2 subgroup is the product of the two genus-3 surface groups:
    # free abelianization of rank 2*3 + 2*3.
    assert ver.free_rank == 12
    assert ver.invariants.torsion == ()


# ---------------------------------------------------------------------------
# Mixed projections of the Klein four-group.


def test_klein_mixed_projection_pipeline():
    actions = _actions("klein-mixed-projections")
    g = actions[0].group
    assert g.order == 4
    assert [a.acting_group.order for a in actions] == [2, 2]
    assert [len(a.kernel_indices) for a in actions] == [2, 2]

    torsion = torsion_generators(actions)
    assert len(torsion) == 40
    assert _brute_force_torsion_count(actions) == 40

    res = build_pi1(actions, max_cosets=20_000)
    assert res.diagonal.table.index == 4
    # Each factor is an elliptic curve modulo a two-torsion translation plus
    # the hyperelliptic involution, so the quotient is a product of two
    # projective lines: simply connected.
    assert todd_coxeter(res.presentation, (), max_cosets=20_000).index == 1

    rep = structure_from_pi1(res)
    assert rep.pi1_order == 1
    assert rep.quotient_signatures == (Signature.of(0), Signature.of(0))
    assert not rep.freeness


# ---------------------------------------------------------------------------
# Degenerate shapes: trivial group, pure kernel, single factor.


def test_trivial_group_product_of_surfaces():
    actions = _actions("trivial-group-surfaces")
    res = build_pi1(actions)
    inv = abelian_invariants(res.presentation)
    assert (inv.free_rank, inv.torsion) == (8, ())
    assert torsion_generators(actions) == []
    ver = verify_from_pi1(res, index_bound=10)
    assert ver.status == "FOUND"
    assert ver.index == 1
    assert ver.free_rank == 8


def test_pure_kernel_pair():
    actions = _actions("z2-pure-kernel-pair")
    # Both projections are trivial, so the full group is in every kernel and
    # the only torsion is the diagonal joint-kernel element.
    torsion = torsion_generators(actions)
    assert len(torsion) == 1
    assert torsion[0].g == 1
    assert all(f.exponent == 0 for f in torsion[0].factors)

    res = build_pi1(actions)
    inv = abelian_invariants(res.presentation)
    assert (inv.free_rank, inv.torsion) == (8, ())

    rep = structure_from_pi1(res)
    assert rep.intersection_kernel_order == 2
    assert rep.quotient_signatures == (Signature.of(2), Signature.of(2))
    assert not rep.e_order_exact
    assert rep.e_order_bound == 2
    # The group acts trivially on each factor, so every element fixes points.
    assert not rep.freeness


def test_single_factor_s3_quotient_is_simply_connected():
    actions = _actions("one-factor-s3")
    assert len(actions) == 1
    res = build_pi1(actions)
    assert todd_coxeter(res.presentation, (), max_cosets=10_000).index == 1


# ---------------------------------------------------------------------------
# Cross-cutting properties.


def test_freeness_matches_empty_torsion():
    z2 = cyclic_group(2)
    shapes = [(0, (2, 2, 2, 2)), (1, (2, 2)), (2, ())]
    vectors = {
        shape: enumerate_generating_vectors(z2, *shape) for shape in shapes
    }
    for s1 in shapes:
        for v1 in vectors[s1]:
            for s2 in shapes:
                for v2 in vectors[s2]:
                    acts = [_identity_action(z2, v1), _identity_action(z2, v2)]
                    free = freeness_check(acts).is_free
                    torsion = torsion_generators(acts)
                    assert free == (not torsion), (s1, s2)


def test_abelianization_stable_under_simplification_budget():
    for name in ("kummer", "z3-triangle-pair", "s3-pair"):
        actions = _actions(name)
        light = build_pi1(actions, tietze_steps=1)
        heavy = build_pi1(actions, tietze_steps=10_000)
        assert abelian_invariants(light.presentation) == abelian_invariants(
            heavy.presentation
        ), name
        assert abelian_invariants(light.raw_presentation) == abelian_invariants(
            heavy.presentation
        ), name


def test_lifted_orbifold_generators_have_correct_group_images():
    # For a free action there is no torsion quotient, so the acting-group
    # image of every generator survives the simplification intact.
    actions = _actions("free-z2-genus3")
    res = build_pi1(actions)
    g = actions[0].group
    assert res.torsion == ()
    for factor, action in enumerate(actions):
        words = lifted_orbifold_generators(res, factor)
        images = action.vector.gen_images()
        assert len(words) == action.orbifold().ngens
        for x, w in enumerate(words):
            expected = next(
                e for e in range(g.order) if action.p_of(e) == images[x]
            )
            assert evaluate_word(w, res.psi, g) == expected


def test_torsion_words_die_in_pi1():
    actions = _actions("z3-triangle-pair")
    res = build_pi1(actions)
    table = todd_coxeter(res.presentation, (), max_cosets=20_000)
    for w in res.torsion_words:
        assert table.trace(0, res.transport(w)) == 0


def test_build_curve_action_validation():
    z2 = cyclic_group(2)
    z3 = cyclic_group(3)
    z4 = cyclic_group(4)
    kummer_vec = GeneratingVector(z2, 0, (2, 2, 2, 2), c_images=(1, 1, 1, 1))
    ident = GroupHom(z2, z2, [1])

    with pytest.raises(ValueError, match="defined on the acting group"):
        build_curve_action(z3, ident, kummer_vec)
    z4_vec = GeneratingVector(z4, 0, (4, 4, 2), c_images=(1, 1, 2))
    into_z4 = GroupHom(z4, z4, [2])  # image has order 2
    with pytest.raises(ValueError, match="onto"):
        build_curve_action(z4, into_z4, z4_vec)

    bad_vec = GeneratingVector(z2, 0, (2, 2, 2, 2), c_images=(1, 1, 1, 0))
    with pytest.raises(InvalidVector, match="order"):
        build_curve_action(z2, ident, bad_vec)

    s3 = symmetric_group(3)
    onto_s3 = GroupHom(s3, s3, [s3.element_index(g) for g in s3.generators])
    with pytest.raises(ValueError, match="share their target"):
        build_curve_action(s3, onto_s3, kummer_vec)
