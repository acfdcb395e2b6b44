"""Orbifold surface groups, their signatures and generating vectors.

The group of signature (g; m_1, ..., m_r) has generators a_1, b_1, ..., a_g,
b_g, c_1, ..., c_r, the power relators c_i^{m_i}, and one long relator
[a_1,b_1]...[a_g,b_g] c_1 ... c_r.  A generating vector is a surjection onto
a finite group under which every c_i image has order exactly m_i; vectors
remember the period order they were written in, while Signature is canonical
(periods sorted ascending).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from math import gcd

from .perm import FiniteGroup, GroupTooLarge
from .presentation import Presentation
from .words import Word


class NonIntegralGenus(ValueError):
    pass


class NegativeGenus(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    genus: int
    periods: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ValueError("negative orbit genus")
        last = 2
        for m in self.periods:
            if m < 2:
                raise ValueError("periods must be at least 2")
            if m < last:
                raise ValueError("periods must be sorted ascending")
            last = m

    @staticmethod
    def of(genus: int, periods: Iterable[int] = ()) -> "Signature":
        return Signature(genus, tuple(sorted(periods)))

    @property
    def r(self) -> int:
        return len(self.periods)

    def orbifold_euler(self) -> Fraction:
        return Fraction(2 - 2 * self.genus) - sum(
            Fraction(m - 1, m) for m in self.periods
        )

    def is_hyperbolic(self) -> bool:
        return self.orbifold_euler() < 0


def _gen_names(genus: int, r: int) -> tuple[str, ...]:
    names = []
    for i in range(genus):
        names.append(f"a{i + 1}")
        names.append(f"b{i + 1}")
    for i in range(r):
        names.append(f"c{i + 1}")
    return tuple(names)


def orbifold_relators(genus: int, periods: Sequence[int]) -> Presentation:
    """Presentation for an explicit (possibly unsorted) period order."""
    r = len(periods)
    names = _gen_names(genus, r)
    relators: list[Word] = []
    long_rel: list[tuple[int, int]] = []
    for i in range(genus):
        a, b = 2 * i, 2 * i + 1
        long_rel += [(a, 1), (b, 1), (a, -1), (b, -1)]
    for i, m in enumerate(periods):
        c = 2 * genus + i
        relators.append(Word(((c, m),)))
        long_rel.append((c, 1))
    if long_rel:
        relators.append(Word(tuple(long_rel)))
    return Presentation(names, tuple(relators))


def orbifold_presentation(s: Signature) -> Presentation:
    return orbifold_relators(s.genus, s.periods)


def surface_presentation(genus: int) -> Presentation:
    return orbifold_relators(genus, ())


def riemann_hurwitz_genus(group_order: int, s: Signature) -> int:
    """Genus of the cover: 2g - 2 = |H| (2g' - 2 + sum(1 - 1/m))."""
    if group_order < 1:
        raise ValueError("group order must be positive")
    rhs = Fraction(group_order) * (
        Fraction(2 * s.genus - 2) + sum(Fraction(m - 1, m) for m in s.periods)
    )
    if rhs.denominator != 1 or (rhs.numerator % 2):
        raise NonIntegralGenus(f"2g-2 = {rhs} is not an even integer")
    g2 = int(rhs) + 2
    if g2 < 0:
        raise NegativeGenus(f"2g = {g2} < 0")
    return g2 // 2


@dataclass(frozen=True)
class GeneratingVector:
    """Images of the orbifold generators in a finite group.

    periods keeps the order the input used; c_images[i] must have order
    exactly periods[i].  Images are element indices of target.
    """

    target: FiniteGroup
    genus: int
    periods: tuple[int, ...]
    a_images: tuple[int, ...] = ()
    b_images: tuple[int, ...] = ()
    c_images: tuple[int, ...] = ()

    @property
    def signature(self) -> Signature:
        return Signature.of(self.genus, self.periods)

    def presentation(self) -> Presentation:
        return orbifold_relators(self.genus, self.periods)

    def gen_images(self) -> tuple[int, ...]:
        """Target element per presentation generator (a1, b1, ..., c1, ...)."""
        out = []
        for a, b in zip(self.a_images, self.b_images):
            out.append(a)
            out.append(b)
        out.extend(self.c_images)
        return tuple(out)


@dataclass(frozen=True)
class VectorViolation:
    kind: str  # "order" | "relation" | "generation"
    index: Optional[int]
    message: str


def validate_generating_vector(v: GeneratingVector) -> Optional[VectorViolation]:
    """First violated vector condition, or None when the vector is valid."""
    h = v.target
    if not (len(v.a_images) == len(v.b_images) == v.genus):
        return VectorViolation("relation", None, "a/b image counts must equal the genus")
    if len(v.c_images) != len(v.periods):
        return VectorViolation("relation", None, "one c image per period required")
    for i, (c, m) in enumerate(zip(v.c_images, v.periods)):
        got = h.element_order(c)
        if got != m:
            return VectorViolation(
                "order", i, f"c{i + 1} has order {got}, period demands {m}"
            )
    acc = 0
    for a, b in zip(v.a_images, v.b_images):
        comm = h.mul_idx(h.mul_idx(h.mul_idx(a, b), h.inv_idx(a)), h.inv_idx(b))
        acc = h.mul_idx(acc, comm)
    for c in v.c_images:
        acc = h.mul_idx(acc, c)
    if acc != 0:
        return VectorViolation(
            "relation", None, f"long relation evaluates to element {acc}, not identity"
        )
    gens = [h.elements[i] for i in (*v.a_images, *v.b_images, *v.c_images)]
    closure = FiniteGroup(gens, degree=h.degree) if gens else None
    size = closure.order if closure else 1
    if size != h.order:
        return VectorViolation(
            "generation", None, f"images generate a subgroup of order {size} < {h.order}"
        )
    return None


def enumerate_generating_vectors(
    h: FiniteGroup,
    genus: int,
    periods: Sequence[int],
    max_group_order: int = 128,
) -> list[GeneratingVector]:
    """All generating vectors for the given data, in deterministic order.

    Depth-first over c images (filtered by exact element order, the last one
    solved from the long relation when genus is 0), then over a/b images with
    the last pair filtered by the required commutator value.
    """
    if h.order > max_group_order:
        raise GroupTooLarge(f"vector enumeration capped at order {max_group_order}")
    periods = tuple(periods)
    by_order: dict[int, list[int]] = {}
    for m in set(periods):
        by_order[m] = [e for e in range(h.order) if h.element_order(e) == m]
        if not by_order[m]:
            return []
    results: list[GeneratingVector] = []
    r = len(periods)

    def commutator(a: int, b: int) -> int:
        return h.mul_idx(h.mul_idx(h.mul_idx(a, b), h.inv_idx(a)), h.inv_idx(b))

    def finish(cs: tuple[int, ...], abs_: tuple[int, ...]) -> None:
        a_imgs = abs_[0::2]
        b_imgs = abs_[1::2]
        gens = [h.elements[i] for i in (*a_imgs, *b_imgs, *cs)]
        if gens:
            if FiniteGroup(gens, degree=h.degree).order != h.order:
                return
        elif h.order != 1:
            return
        results.append(
            GeneratingVector(h, genus, periods, a_imgs, b_imgs, cs)
        )

    def extend_ab(cs: tuple[int, ...]) -> None:
        # need prod of commutators == inverse of c product
        inv_cprod = 0
        for c in cs:
            inv_cprod = h.mul_idx(inv_cprod, c)
        needed = h.inv_idx(inv_cprod)
        if genus == 0:
            if needed == 0:
                finish(cs, ())
            return

        def rec(depth: int, acc: int, chosen: tuple[int, ...]) -> None:
            if depth == genus - 1:
                want = h.mul_idx(h.inv_idx(acc), needed)
                for a in range(h.order):
                    for b in range(h.order):
                        if commutator(a, b) == want:
                            finish(cs, chosen + (a, b))
                return
            for a in range(h.order):
                for b in range(h.order):
                    rec(depth + 1, h.mul_idx(acc, commutator(a, b)), chosen + (a, b))

        rec(0, 0, ())

    def rec_c(i: int, chosen: tuple[int, ...]) -> None:
        if genus == 0 and r and i == r - 1:
            # last c image is forced by the long relation
            prod = 0
            for c in chosen:
                prod = h.mul_idx(prod, c)
            last = h.inv_idx(prod)
            if h.element_order(last) == periods[-1]:
                extend_ab(chosen + (last,))
            return
        if i == r:
            extend_ab(chosen)
            return
        for c in by_order[periods[i]]:
            rec_c(i + 1, chosen + (c,))

    rec_c(0, ())
    return results


def quotient_signature(s: Signature, kill: Mapping[int, Iterable[int]]) -> Signature:
    """Signature after killing powers of period generators.

    kill maps a period index to the exponents whose powers die; the new
    period is gcd(m, exponents), dropped when it reaches 1.  The genus is
    unchanged.
    """
    norm: dict[int, tuple[int, ...]] = {i: tuple(exps) for i, exps in kill.items()}
    for idx, exps in norm.items():
        if not 0 <= idx < len(s.periods):
            raise ValueError(f"period index {idx} out of range")
        for e in exps:
            if e <= 0:
                raise ValueError("kill exponents must be positive")
    new_periods = []
    for i, m in enumerate(s.periods):
        d = m
        for e in norm.get(i, ()):
            d = gcd(d, e)
        if d > 1:
            new_periods.append(d)
    return Signature.of(s.genus, new_periods)
