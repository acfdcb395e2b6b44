"""Tests for the finite permutation-group layer."""

import pytest

from prodquot.perm import (
    FiniteGroup,
    GroupHom,
    GroupTooLarge,
    NotAHomomorphism,
    Permutation,
    centralizer,
    conjugating_element,
    coset_representatives,
    cyclic_group,
    dihedral_group,
    identity_perm,
    intersect_subgroups,
    kernel,
    perm_from_cycles,
    quotient,
    symmetric_group,
    trivial_group,
    trivial_hom,
)


def test_permutation_rejects_non_bijections():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
    with pytest.raises(ValueError):
        Permutation((1, 2, 3))


def test_composition_applies_right_factor_first():
    # p sends 0->1, q sends 1->2; (q*p) should send 0 -> p(0)=1 -> q(1)=2.
    p = perm_from_cycles(3, [(0, 1)])
    q = perm_from_cycles(3, [(1, 2)])
    assert (q * p)(0) == 2
    assert (p * q)(0) == 1


def test_permutation_inverse_and_order():
    c = perm_from_cycles(4, [(0, 1, 2, 3)])
    assert (c * c.inverse()).is_identity()
    assert c.order() == 4
    assert identity_perm(5).order() == 1
    assert perm_from_cycles(6, [(0, 1), (2, 3, 4)]).order() == 6


def test_standard_group_orders():
    assert trivial_group().order == 1
    assert cyclic_group(7).order == 7
    assert symmetric_group(3).order == 6
    assert symmetric_group(4).order == 24
    assert dihedral_group(4).order == 8
    assert dihedral_group(6).order == 12


def test_group_too_large_guard():
    with pytest.raises(GroupTooLarge):
        FiniteGroup(symmetric_group(5).generators, max_order=100)


def test_element_indexing_starts_at_identity():
    g = symmetric_group(3)
    assert g.elements[0].is_identity()
    assert g.element_index(identity_perm(3)) == 0
    for i, e in enumerate(g.elements):
        assert g.element_index(e) == i
    with pytest.raises(KeyError):
        g.element_index(identity_perm(4))


def test_index_arithmetic_matches_permutations():
    g = symmetric_group(3)
    for a in range(g.order):
        assert g.elements[g.inv_idx(a)] == g.elements[a].inverse()
        assert g.element_order(a) == g.elements[a].order()
        for b in range(g.order):
            assert g.elements[g.mul_idx(a, b)] == g.elements[a] * g.elements[b]


def test_conj_idx_is_left_conjugation():
    g = symmetric_group(3)
    for h in range(g.order):
        for a in range(g.order):
            expected = g.elements[h] * g.elements[a] * g.elements[h].inverse()
            assert g.elements[g.conj_idx(h, a)] == expected


def test_element_word_reconstructs_elements():
    for g in (symmetric_group(4), dihedral_group(5)):
        for a in range(g.order):
            acc = 0
            for gi in g.element_word(a):
                acc = g.mul_idx(acc, g.element_index(g.generators[gi]))
            assert acc == a


def test_conjugacy_classes_partition_s3():
    g = symmetric_group(3)
    classes = {g.conjugacy_class(a) for a in range(g.order)}
    sizes = sorted(len(c) for c in classes)
    assert sizes == [1, 2, 3]
    covered = sorted(i for c in classes for i in c)
    assert covered == list(range(g.order))
    assert g.conjugacy_class(0) == (0,)


def test_subgroup_from_indices_requires_closure():
    g = symmetric_group(3)
    three_cycle = g.element_index(perm_from_cycles(3, [(0, 1, 2)]))
    rotations = {0, three_cycle, g.inv_idx(three_cycle)}
    sub = g.subgroup_from_indices(rotations)
    assert sub.order == 3
    assert sorted(sub.parent_indices()) == sorted(rotations)
    with pytest.raises(ValueError):
        g.subgroup_from_indices({0, three_cycle})  # missing the inverse


def test_parent_indices_requires_parent():
    with pytest.raises(ValueError):
        symmetric_group(3).parent_indices()


def test_hom_validation_and_kernel():
    s3 = symmetric_group(3)
    c2 = cyclic_group(2)
    # Generators of S3 are a transposition (odd) and a 3-cycle (even), so the
    # sign map sends them to the nontrivial and trivial element of C2.
    assert s3.generators[0].order() == 2
    assert s3.generators[1].order() == 3
    sign = GroupHom(s3, c2, [1, 0])
    assert sign.is_surjective()
    ker = kernel(sign)
    assert ker.order == 3
    assert all(s3.elements[i].order() in (1, 3) for i in ker.parent_indices())
    with pytest.raises(NotAHomomorphism):
        GroupHom(s3, c2, [1, 1])  # 3-cycle cannot map to an involution


def test_trivial_and_identity_homs():
    g = dihedral_group(4)
    t = trivial_hom(g)
    assert kernel(t).order == g.order
    ident = GroupHom(g, g, [g.element_index(gen) for gen in g.generators])
    assert ident.is_surjective()
    assert kernel(ident).order == 1
    assert [ident.apply_idx(a) for a in range(g.order)] == list(range(g.order))


def test_quotient_by_normal_subgroup():
    s3 = symmetric_group(3)
    a3 = s3.subgroup_from_indices(
        [a for a in range(s3.order) if s3.element_order(a) in (1, 3)]
    )
    q, proj = quotient(s3, a3)
    assert q.order == 2
    assert proj.is_surjective()
    assert sorted(proj.kernel_indices()) == sorted(a3.parent_indices())


def test_quotient_rejects_non_normal_subgroup():
    s3 = symmetric_group(3)
    flip = s3.element_index(perm_from_cycles(3, [(0, 1)]))
    reflection = s3.subgroup_from_indices({0, flip})
    with pytest.raises(ValueError, match="not normal"):
        quotient(s3, reflection)


def test_centralizer_orders_in_s3():
    g = symmetric_group(3)
    for a in range(g.order):
        cent = centralizer(g, a)
        members = set(cent.parent_indices())
        assert 0 in members and a in members
        for h in range(g.order):
            assert (g.conj_idx(h, a) == a) == (h in members)
    assert centralizer(g, 0).order == 6
    flip = g.element_index(perm_from_cycles(3, [(0, 1)]))
    cycle = g.element_index(perm_from_cycles(3, [(0, 1, 2)]))
    assert centralizer(g, flip).order == 2
    assert centralizer(g, cycle).order == 3


def test_conjugating_element_finds_least_witness():
    g = symmetric_group(3)
    flip_a = g.element_index(perm_from_cycles(3, [(0, 1)]))
    flip_b = g.element_index(perm_from_cycles(3, [(1, 2)]))
    cycle = g.element_index(perm_from_cycles(3, [(0, 1, 2)]))
    h = conjugating_element(g, flip_a, flip_b)
    assert h is not None
    assert g.conj_idx(h, flip_a) == flip_b
    assert all(g.conj_idx(k, flip_a) != flip_b for k in range(h))
    assert conjugating_element(g, flip_a, cycle) is None
    assert conjugating_element(g, cycle, cycle) == 0


def test_coset_representatives_cover_the_group():
    g = dihedral_group(4)
    rot = g.element_index(g.generators[0])
    rotations = g.subgroup_from_indices(
        {0, rot, g.mul_idx(rot, rot), g.mul_idx(rot, g.mul_idx(rot, rot))}
    )
    reps = coset_representatives(g, rotations)
    assert reps[0] == 0
    assert len(reps) == g.order // rotations.order
    seen = set()
    for r in reps:
        coset = {g.mul_idx(r, h) for h in rotations.parent_indices()}
        assert not (coset & seen)
        assert min(coset) == r
        seen |= coset
    assert seen == set(range(g.order))


def test_intersect_subgroups():
    g = symmetric_group(3)
    flip = g.element_index(perm_from_cycles(3, [(0, 1)]))
    cycle = g.element_index(perm_from_cycles(3, [(0, 1, 2)]))
    reflections = g.subgroup_from_indices({0, flip})
    rotations = g.subgroup_from_indices({0, cycle, g.inv_idx(cycle)})
    assert intersect_subgroups(g, [reflections, rotations]).order == 1
    assert intersect_subgroups(g, [rotations, rotations]).order == 3
    whole = intersect_subgroups(g, [])
    assert whole.order == g.order
