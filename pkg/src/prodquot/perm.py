"""Finite permutation groups with deterministic element indexing.

Elements are stored in the order a breadth-first closure from the generators
discovers them (identity first, then right-multiplications in generator
order), and every "least element" tie-break in the package refers to this
index.  Groups are immutable once built and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

DEFAULT_ORDER_BOUND = 10**6
DEFAULT_PAIR_BOUND = 10**6


class GroupTooLarge(RuntimeError):
    pass


class NotAHomomorphism(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """Permutation of 0..degree-1; composition applies the right factor first."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation of 0..{len(self.images) - 1}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.degree)))

    def inverse(self) -> "Permutation":
        out = [0] * self.degree
        for i, v in enumerate(self.images):
            out[v] = i
        return Permutation(tuple(out))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images))

    def order(self) -> int:
        n = 1
        acc = self
        while not acc.is_identity():
            acc = acc * self
            n += 1
        return n

    def __call__(self, point: int) -> int:
        return self.images[point]


def identity_perm(degree: int) -> Permutation:
    return Permutation(tuple(range(degree)))


def perm_from_cycles(degree: int, cycles: Sequence[Sequence[int]]) -> Permutation:
    images = list(range(degree))
    for cyc in cycles:
        for i, pt in enumerate(cyc):
            images[pt] = cyc[(i + 1) % len(cyc)]
    return Permutation(tuple(images))


class FiniteGroup:
    """A finite permutation group closed from an explicit generator list."""

    def __init__(
        self,
        generators: Sequence[Permutation],
        degree: Optional[int] = None,
        max_order: int = DEFAULT_ORDER_BOUND,
        parent: Optional["FiniteGroup"] = None,
    ):
        if degree is None:
            if not generators:
                raise ValueError("degree required for an empty generator list")
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise ValueError("generator degrees disagree")
        self.degree = degree
        self.generators = tuple(g for g in generators)
        elements: list[Permutation] = [identity_perm(degree)]
        index = {elements[0].images: 0}
        # word chain: elements[i] == elements[parent_of[i]] * generators[gen_of[i]]
        parent_of = [-1]
        gen_of = [-1]
        for e_idx, elem in enumerate(elements):
            for g_idx, g in enumerate(self.generators):
                prod = elem * g
                if prod.images not in index:
                    if len(elements) >= max_order:
                        raise GroupTooLarge(f"order exceeds {max_order}")
                    index[prod.images] = len(elements)
                    elements.append(prod)
                    parent_of.append(e_idx)
                    gen_of.append(g_idx)
        self.elements = tuple(elements)
        self._index = index
        self._parent_of = parent_of
        self._gen_of = gen_of
        self._inverse: Optional[list[int]] = None
        self.parent = parent
        self._presentation_cache = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_index(self, perm: Permutation) -> int:
        try:
            return self._index[perm.images]
        except KeyError:
            raise KeyError("permutation is not an element of this group") from None

    def __contains__(self, perm: Permutation) -> bool:
        return perm.images in self._index

    def mul_idx(self, a: int, b: int) -> int:
        return self._index[(self.elements[a] * self.elements[b]).images]

    def inv_idx(self, a: int) -> int:
        if self._inverse is None:
            self._inverse = [self.element_index(e.inverse()) for e in self.elements]
        return self._inverse[a]

    def conj_idx(self, h: int, a: int) -> int:
        """h a h^-1 by element indices."""
        return self.mul_idx(self.mul_idx(h, a), self.inv_idx(h))

    def element_order(self, a: int) -> int:
        return self.elements[a].order()

    def element_word(self, a: int) -> list[int]:
        """Generator indices whose left-to-right product is element a."""
        out: list[int] = []
        while a != 0:
            out.append(self._gen_of[a])
            a = self._parent_of[a]
        out.reverse()
        return out

    def conjugacy_class(self, a: int) -> tuple[int, ...]:
        seen = {a}
        queue = [a]
        for x in queue:
            for g in range(len(self.generators)):
                gi = self.element_index(self.generators[g])
                y = self.conj_idx(gi, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    def subgroup_from_indices(self, indices: Iterable[int]) -> "FiniteGroup":
        """Subgroup on the given closed element set, with a small generator set."""
        wanted = sorted(set(indices))
        gens: list[Permutation] = []
        closure = {0}
        for idx in wanted:
            if idx in closure:
                continue
            gens.append(self.elements[idx])
            sub = FiniteGroup(gens, degree=self.degree, parent=self)
            closure = {self.element_index(e) for e in sub.elements}
        if not gens:
            return FiniteGroup([], degree=self.degree, parent=self)
        sub = FiniteGroup(gens, degree=self.degree, parent=self)
        got = sorted(self.element_index(e) for e in sub.elements)
        if got != wanted:
            raise ValueError("element set is not closed under the group operations")
        return sub

    def parent_indices(self) -> list[int]:
        """Indices of this subgroup's elements inside its parent."""
        if self.parent is None:
            raise ValueError("group has no parent")
        return [self.parent.element_index(e) for e in self.elements]


def group_from_generators(
    generators: Sequence[Permutation],
    degree: Optional[int] = None,
    max_order: int = DEFAULT_ORDER_BOUND,
) -> FiniteGroup:
    return FiniteGroup(generators, degree=degree, max_order=max_order)


def trivial_group(degree: int = 1) -> FiniteGroup:
    return FiniteGroup([], degree=degree)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([perm_from_cycles(n, [tuple(range(n))])]) if n > 1 else trivial_group()


def symmetric_group(n: int) -> FiniteGroup:
    if n < 2:
        return trivial_group(max(n, 1))
    gens = [perm_from_cycles(n, [(0, 1)]), perm_from_cycles(n, [tuple(range(n))])]
    if n == 2:
        gens = gens[:1]
    return FiniteGroup(gens)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n (n >= 3)."""
    rot = perm_from_cycles(n, [tuple(range(n))])
    flip = Permutation(tuple((n - i) % n for i in range(n)))
    return FiniteGroup([rot, flip])


def direct_product_group(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Product acting on the disjoint union of the two point sets."""
    d = a.degree + b.degree
    gens = [
        Permutation(tuple(g.images[i] if i < a.degree else i for i in range(d)))
        for g in a.generators
    ]
    for g in b.generators:
        images = tuple(i if i < a.degree else g.images[i - a.degree] + a.degree for i in range(d))
        gens.append(Permutation(images))
    return FiniteGroup(gens, degree=d)


class GroupHom:
    """Homomorphism between finite groups, defined on generators.

    Validation is exhaustive: the induced map is computed on every element
    through its generator word and then checked on all pairs (bounded by
    pair_bound).
    """

    def __init__(
        self,
        source: FiniteGroup,
        target: FiniteGroup,
        gen_images: Sequence[int],
        pair_bound: int = DEFAULT_PAIR_BOUND,
    ):
        if len(gen_images) != len(source.generators):
            raise ValueError("one image per source generator required")
        for v in gen_images:
            if not 0 <= v < target.order:
                raise ValueError("generator image out of range")
        self.source = source
        self.target = target
        self.gen_images = tuple(gen_images)
        n = source.order
        if n * n > pair_bound:
            raise GroupTooLarge(f"homomorphism check needs {n * n} pairs > {pair_bound}")
        table = [0] * n
        for a in range(n):
            acc = 0
            for g in source.element_word(a):
                acc = target.mul_idx(acc, gen_images[g])
            table[a] = acc
        self._table = table
        for a in range(n):
            fa = table[a]
            for b in range(n):
                if table[source.mul_idx(a, b)] != target.mul_idx(fa, table[b]):
                    raise NotAHomomorphism(
                        f"images violate multiplication at element pair ({a}, {b})"
                    )

    def apply_idx(self, a: int) -> int:
        return self._table[a]

    def image_indices(self) -> list[int]:
        return sorted(set(self._table))

    def is_surjective(self) -> bool:
        return len(set(self._table)) == self.target.order

    def kernel_indices(self) -> list[int]:
        return [a for a, v in enumerate(self._table) if v == 0]


def homomorphism_from_images(
    source: FiniteGroup, target: FiniteGroup, gen_images: Sequence[int]
) -> GroupHom:
    return GroupHom(source, target, gen_images)


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, [g.element_index(p) for p in g.generators])


def trivial_hom(g: FiniteGroup) -> GroupHom:
    t = trivial_group()
    return GroupHom(g, t, [0] * len(g.generators))


def kernel(hom: GroupHom) -> FiniteGroup:
    return hom.source.subgroup_from_indices(hom.kernel_indices())


def quotient(g: FiniteGroup, n: FiniteGroup) -> tuple[FiniteGroup, GroupHom]:
    """Quotient by a normal subgroup, realized on the left cosets.

    Returns (quotient group, projection hom).  n must be a subgroup of g
    (its elements must lie in g) and normal in it.
    """
    n_idx = sorted(g.element_index(e) for e in n.elements)
    n_set = set(n_idx)
    for gen in g.generators:
        gi = g.element_index(gen)
        for a in n_idx:
            if g.conj_idx(gi, a) not in n_set:
                raise ValueError("subgroup is not normal")
    coset_of = [-1] * g.order
    reps: list[int] = []
    for e in range(g.order):
        if coset_of[e] < 0:
            cid = len(reps)
            reps.append(e)
            for a in n_idx:
                coset_of[g.mul_idx(e, a)] = cid
    k = len(reps)
    images = []
    for gen in g.generators:
        gi = g.element_index(gen)
        images.append(Permutation(tuple(coset_of[g.mul_idx(gi, reps[c])] for c in range(k))))
    q = FiniteGroup(images, degree=k) if images else trivial_group(max(k, 1))
    proj = GroupHom(g, q, [q.element_index(p) for p in images])
    if g.order != n.order * q.order:
        raise AssertionError("quotient order mismatch")
    return q, proj


def centralizer(g: FiniteGroup, a: int) -> FiniteGroup:
    hits = [h for h in range(g.order) if g.mul_idx(h, a) == g.mul_idx(a, h)]
    return g.subgroup_from_indices(hits)


def conjugating_element(g: FiniteGroup, a: int, b: int) -> Optional[int]:
    """Least h with h a h^-1 == b, or None."""
    for h in range(g.order):
        if g.conj_idx(h, a) == b:
            return h
    return None


def coset_representatives(g: FiniteGroup, h: FiniteGroup) -> list[int]:
    """Least-index representatives of the left cosets rep*H; identity first."""
    h_idx = [g.element_index(e) for e in h.elements]
    covered = [False] * g.order
    reps = []
    for e in range(g.order):
        if not covered[e]:
            reps.append(e)
            for a in h_idx:
                covered[g.mul_idx(e, a)] = True
    return reps


def intersect_subgroups(g: FiniteGroup, subs: Sequence[FiniteGroup]) -> FiniteGroup:
    common = set(range(g.order))
    for s in subs:
        common &= {g.element_index(e) for e in s.elements}
    return g.subgroup_from_indices(common)
