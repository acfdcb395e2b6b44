"""Fundamental groups of quotients of curve products by diagonal actions.

A finite group G acts on each factor curve through a quotient map
p_i : G -> H_i and a generating vector for H_i.  This module builds:

  * the lift of G through one orbifold cover (all pairs (g, t) with
    p(g) = phi(t)), presented by Reidemeister-Schreier,
  * the diagonal lift (tuples over the factor lifts sharing one G image),
  * the finite set of torsion normal forms whose normal closure kills
    exactly the elements with fixed points,
  * a finite presentation of the fundamental group of the quotient,
  * a structure report for the extension of the orbifold-quotient image
    by a finite kernel, and a bounded search for a finite-index subgroup
    that looks like a product of surface groups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .abelian import AbelianInvariants
from .coset import CosetOverflow, CosetTable, todd_coxeter
from .orbifold import (
    GeneratingVector,
    Signature,
    quotient_signature,
    riemann_hurwitz_genus,
    validate_generating_vector,
)
from .perm import (
    FiniteGroup,
    GroupHom,
    Permutation,
    centralizer,
    conjugating_element,
    cyclic_group,
    dihedral_group,
    direct_product_group,
    quotient,
    trivial_group,
)
from .presentation import (
    Presentation,
    abelian_invariants,
    direct_product_presentation,
    product_offsets,
    quotient_presentation,
    tietze_simplify,
    transport_word,
)
from .rewrite import (
    SubgroupPresentation,
    evaluate_word,
    finite_group_presentation,
    kernel_subgroup_words,
    reidemeister_schreier,
)
from .words import Word, free_reduce

DEFAULT_MAX_COSETS = 100_000
DEFAULT_TIETZE_STEPS = 10_000
DEFAULT_INDEX_BOUND = 8
# order probes (|pi1|, |orbifold quotient product|) run against infinite
# groups routinely; keep their overflow cheap
DEFAULT_PROBE_COSETS = 20_000
_HOM_TUPLE_BOUND = 200_000


class InvalidVector(ValueError):
    """A generating vector violated an order, relation, or generation check."""


def _bfs_section(group: FiniteGroup, gen_values: Sequence[int]) -> tuple[Word, ...]:
    """Shortest positive word per element, walking generators in order."""
    reps: list[Optional[Word]] = [None] * group.order
    reps[0] = Word()
    queue = [0]
    for x in queue:
        for g, v in enumerate(gen_values):
            t = group.mul_idx(x, v)
            if reps[t] is None:
                reps[t] = reps[x] * Word(((g, 1),))
                queue.append(t)
    if any(r is None for r in reps):
        raise ValueError("images do not generate the group")
    return tuple(reps)  # type: ignore[arg-type]


def _pow_idx(group: FiniteGroup, a: int, n: int) -> int:
    acc = 0
    for _ in range(n):
        acc = group.mul_idx(acc, a)
    return acc


def _generated_order(group: FiniteGroup, indices: Sequence[int]) -> int:
    gens = [group.elements[i] for i in set(indices) if i]
    if not gens:
        return 1
    return FiniteGroup(gens, degree=group.degree).order


# ---------------------------------------------------------------------------
# One factor: the acting group, the curve, and the lift.


@dataclass(frozen=True)
class CurveAction:
    """One factor: G acts on a curve through p and a generating vector."""

    group: FiniteGroup
    projection: GroupHom
    vector: GeneratingVector
    genus: int
    kernel_indices: tuple[int, ...]
    section: tuple[Word, ...]  # H element -> orbifold word mapping onto it

    @property
    def acting_group(self) -> FiniteGroup:
        return self.projection.target

    @property
    def signature(self) -> Signature:
        return self.vector.signature

    def orbifold(self) -> Presentation:
        return self.vector.presentation()

    def p_of(self, g_idx: int) -> int:
        return self.projection.apply_idx(g_idx)


def build_curve_action(
    group: FiniteGroup, projection: GroupHom, vector: GeneratingVector
) -> CurveAction:
    if projection.source is not group:
        raise ValueError("projection must be defined on the acting group")
    if not projection.is_surjective():
        raise ValueError("projection must map onto the curve's symmetry group")
    if vector.target is not projection.target:
        raise ValueError("vector and projection must share their target group")
    violation = validate_generating_vector(vector)
    if violation is not None:
        raise InvalidVector(violation.message)
    genus = riemann_hurwitz_genus(vector.target.order, vector.signature)
    section = _bfs_section(vector.target, vector.gen_images())
    return CurveAction(
        group,
        projection,
        vector,
        genus,
        tuple(projection.kernel_indices()),
        section,
    )


@dataclass
class LiftGroup:
    """Pairs (g, t) with p(g) = phi(t), presented inside G x orbifold.

    When the projection is an isomorphism the second coordinate identifies
    the lift with the orbifold group itself; no rewriting is stored then
    (subgroup and old_to_new are None) and pair words pass through.
    """

    action: CurveAction
    ambient: Presentation
    group_gens: int  # leading ambient generators presenting G
    table: CosetTable
    subgroup: Optional[SubgroupPresentation]
    presentation: Presentation  # simplified from the raw rewriting
    old_to_new: Optional[tuple[Word, ...]]  # raw subgroup generator -> simplified word
    psi: tuple[int, ...]  # G element per simplified generator
    t_components: tuple[Word, ...]  # orbifold word per simplified generator
    section: tuple[Word, ...]  # G element -> simplified word with that image

    def embed(self, g_idx: int, t_word: Word) -> Word:
        """Ambient word for the pair (g, t)."""
        g_word = free_reduce((g, 1) for g in self.action.group.element_word(g_idx))
        return g_word * t_word.shift(self.group_gens)

    def rewrite_pair(self, g_idx: int, t_word: Word) -> Word:
        if self.subgroup is None:
            return free_reduce(t_word.letters)
        return transport_word(
            self.subgroup.rewrite(self.embed(g_idx, t_word)), self.old_to_new
        )


def lift_group(
    action: CurveAction,
    max_cosets: int = DEFAULT_MAX_COSETS,
    tietze_steps: int = DEFAULT_TIETZE_STEPS,
) -> LiftGroup:
    g = action.group
    h = action.acting_group
    gpres = finite_group_presentation(g)
    tpres = action.vector.presentation()
    k = gpres.ngens
    ambient = direct_product_presentation([gpres, tpres])
    phi = action.vector.gen_images()
    sec = action.section
    words: list[Word] = []
    # each G generator paired with an orbifold word of matching image
    for i, perm in enumerate(g.generators):
        target = action.p_of(g.element_index(perm))
        words.append(Word(((i, 1),)) * sec[target].shift(k))
    # Schreier generators of ker phi, the second-coordinate kernel
    for x in range(h.order):
        for t, img in enumerate(phi):
            w = sec[x] * Word(((t, 1),)) * sec[h.mul_idx(x, img)].inverse()
            if not w.is_identity():
                words.append(w.shift(k))
    table = todd_coxeter(ambient, words, max_cosets)
    if table.index != h.order:
        raise RuntimeError(f"lift has index {table.index}, expected {h.order}")
    if len(action.kernel_indices) == 1:
        # faithful projection: (g, t) <-> t is an isomorphism with the
        # orbifold group, so reuse its presentation directly
        inv_p = [0] * h.order
        for e in range(g.order):
            inv_p[action.p_of(e)] = e
        psi = tuple(inv_p[img] for img in phi)
        return LiftGroup(
            action,
            ambient,
            k,
            table,
            None,
            tpres,
            None,
            psi,
            tuple(Word(((x, 1),)) for x in range(tpres.ngens)),
            _bfs_section(g, psi),
        )
    sub = reidemeister_schreier(ambient, table, prefix="s")
    gen_values = [g.element_index(p) for p in g.generators] + [0] * tpres.ngens
    raw_psi = [evaluate_word(w, gen_values, g) for w in sub.expansions]
    raw_t = [
        free_reduce((gi - k, e) for gi, e in w.letters if gi >= k)
        for w in sub.expansions
    ]
    tz = tietze_simplify(sub.presentation, tietze_steps)
    positions = {name: i for i, name in enumerate(sub.presentation.gens)}
    survivors = [positions[name] for name in tz.presentation.gens]
    psi = tuple(raw_psi[i] for i in survivors)
    # surviving generators denote the same subgroup elements, so their
    # orbifold components carry over unchanged
    t_components = tuple(raw_t[i] for i in survivors)
    if _generated_order(g, psi) != g.order:
        raise RuntimeError("lift generators do not map onto the acting group")
    return LiftGroup(
        action,
        ambient,
        k,
        table,
        sub,
        tz.presentation,
        tz.old_to_new,
        psi,
        t_components,
        _bfs_section(g, psi),
    )


# ---------------------------------------------------------------------------
# The diagonal lift across all factors.


@dataclass
class DiagonalLiftGroup:
    """Tuples over the factor lifts whose G images all agree."""

    lifts: tuple[LiftGroup, ...]
    ambient: Presentation
    offsets: tuple[int, ...]
    table: CosetTable
    subgroup: SubgroupPresentation
    psi: tuple[int, ...]  # common G element per generator
    factor_words: tuple[tuple[Word, ...], ...]  # [factor][generator] -> orbifold word

    @property
    def presentation(self) -> Presentation:
        return self.subgroup.presentation

    @property
    def group(self) -> FiniteGroup:
        return self.lifts[0].action.group

    def rewrite_factors(self, parts: Sequence[Word]) -> Word:
        """Rewrite a tuple given as one lift word per factor."""
        if len(parts) != len(self.lifts):
            raise ValueError("one word per factor required")
        w = Word()
        for part, off in zip(parts, self.offsets):
            w = w * part.shift(off)
        return self.subgroup.rewrite(w)


def diagonal_lift_group(
    lifts: Sequence[LiftGroup], max_cosets: int = DEFAULT_MAX_COSETS
) -> DiagonalLiftGroup:
    if not lifts:
        raise ValueError("at least one factor required")
    g = lifts[0].action.group
    for lift in lifts[1:]:
        if lift.action.group is not g:
            raise ValueError("all factors must share the acting group")
    n = len(lifts)
    fps = [lift.presentation for lift in lifts]
    ambient = direct_product_presentation(fps)
    offs = product_offsets(fps)
    words: list[Word] = []
    # first-factor generators, completed to equal-image tuples by sections
    for x in range(fps[0].ngens):
        w = Word(((x, 1),))
        img = lifts[0].psi[x]
        for j in range(1, n):
            w = w * lifts[j].section[img].shift(offs[j])
        words.append(w)
    # Schreier generators of each later factor's image kernel
    for j in range(1, n):
        sec = lifts[j].section
        for a in range(g.order):
            for x in range(fps[j].ngens):
                w = sec[a] * Word(((x, 1),)) * sec[g.mul_idx(a, lifts[j].psi[x])].inverse()
                if not w.is_identity():
                    words.append(w.shift(offs[j]))
    table = todd_coxeter(ambient, words, max_cosets)
    expected = g.order ** (n - 1)
    if table.index != expected:
        raise RuntimeError(f"diagonal lift has index {table.index}, expected {expected}")
    sub = reidemeister_schreier(ambient, table, prefix="y")
    psi: list[int] = []
    factor_words: list[list[Word]] = [[] for _ in range(n)]
    for w in sub.expansions:
        coords = []
        for j in range(n):
            lo, hi = offs[j], offs[j] + fps[j].ngens
            part = free_reduce((gi - lo, e) for gi, e in w.letters if lo <= gi < hi)
            coords.append(evaluate_word(part, lifts[j].psi, g))
            tw = Word()
            for x, e in part.letters:
                tw = tw * (lifts[j].t_components[x] ** e)
            factor_words[j].append(tw)
        if len(set(coords)) != 1:
            raise RuntimeError("factor images disagree on a diagonal generator")
        psi.append(coords[0])
    if _generated_order(g, psi) != g.order:
        raise RuntimeError("diagonal generators do not map onto the acting group")
    return DiagonalLiftGroup(
        tuple(lifts),
        ambient,
        tuple(offs),
        table,
        sub,
        tuple(psi),
        tuple(tuple(fw) for fw in factor_words),
    )


# ---------------------------------------------------------------------------
# Torsion normal forms.


@dataclass(frozen=True)
class TorsionFactor:
    """One coordinate of a torsion normal form: twist * d^exponent * twist^-1."""

    period_index: Optional[int]  # index into the factor's period list
    exponent: int  # 0 encodes the trivial coordinate
    twist: Word  # conjugating word over the factor's orbifold generators

    def word(self, genus: int) -> Word:
        if self.exponent == 0:
            return Word()
        core = Word(((2 * genus + self.period_index, self.exponent),))
        return self.twist * core * self.twist.inverse()


_TRIVIAL_FACTOR = TorsionFactor(None, 0, Word())


@dataclass(frozen=True)
class TorsionElement:
    """Normal form of a finite-order element of the diagonal lift."""

    g: int  # element index in G
    factors: tuple[TorsionFactor, ...]
    distinguished: Optional[int]  # factor whose twist is trivial by construction

    def key(self) -> tuple:
        return (
            self.g,
            tuple((f.period_index, f.exponent, f.twist.letters) for f in self.factors),
        )


def _common_kernel(actions: Sequence[CurveAction]) -> set[int]:
    common = set(actions[0].kernel_indices)
    for a in actions[1:]:
        common &= set(a.kernel_indices)
    return common


def _factor_options(action: CurveAction, target: int) -> list[TorsionFactor]:
    """All normal-form coordinates whose image equals the given H element."""
    h = action.acting_group
    opts: list[TorsionFactor] = []
    if target == 0:
        opts.append(_TRIVIAL_FACTOR)
    for q, m in enumerate(action.vector.periods):
        d = action.vector.c_images[q]
        for ell in range(1, m):
            base = _pow_idx(h, d, ell)
            c = conjugating_element(h, base, target)
            if c is None:
                continue
            for v in sorted(centralizer(h, base).parent_indices()):
                opts.append(TorsionFactor(q, ell, action.section[h.mul_idx(c, v)]))
    return opts


def torsion_generators(actions: Sequence[CurveAction]) -> list[TorsionElement]:
    """Finite set of normal forms whose normal closure is all of the torsion.

    One factor is distinguished and carries an untwisted nontrivial power;
    earlier factors are trivial, later ones run over every compatible
    conjugate-power coordinate with twists drawn from the stored sections.
    Elements of the joint kernel appear with all coordinates trivial.
    """
    acts = list(actions)
    if not acts:
        raise ValueError("at least one factor required")
    g = acts[0].group
    n = len(acts)
    out: dict[tuple, TorsionElement] = {}
    for e in sorted(_common_kernel(acts) - {0}):
        te = TorsionElement(e, (_TRIVIAL_FACTOR,) * n, None)
        out[te.key()] = te
    for i in range(n):
        ai = acts[i]
        hi = ai.acting_group
        for q, m in enumerate(ai.vector.periods):
            d = ai.vector.c_images[q]
            for ell in range(1, m):
                target = _pow_idx(hi, d, ell)
                pivot = TorsionFactor(q, ell, Word())
                for e in range(g.order):
                    if ai.p_of(e) != target:
                        continue
                    if any(acts[j].p_of(e) != 0 for j in range(i)):
                        continue
                    options = []
                    ok = True
                    for j in range(i + 1, n):
                        opts = _factor_options(acts[j], acts[j].p_of(e))
                        if not opts:
                            ok = False
                            break
                        options.append(opts)
                    if not ok:
                        continue
                    for combo in itertools.product(*options):
                        factors = (_TRIVIAL_FACTOR,) * i + (pivot,) + combo
                        te = TorsionElement(e, factors, i)
                        _check_membership(acts, te)
                        out.setdefault(te.key(), te)
    return list(out.values())


def _check_membership(actions: Sequence[CurveAction], te: TorsionElement) -> None:
    for j, a in enumerate(actions):
        w = te.factors[j].word(a.vector.genus)
        got = evaluate_word(w, a.vector.gen_images(), a.acting_group)
        if got != a.p_of(te.g):
            raise RuntimeError("torsion coordinate image does not match the fiber")


# ---------------------------------------------------------------------------
# Freeness.


@dataclass(frozen=True)
class FreenessResult:
    is_free: bool
    witness: Optional[int]  # G element fixing a point on every factor


def freeness_check(actions: Sequence[CurveAction]) -> FreenessResult:
    """An element has a fixed point on a factor exactly when its image there
    is conjugate to a power (zeroth included) of a period image."""
    acts = list(actions)
    g = acts[0].group
    fixed_sets = []
    for a in acts:
        h = a.acting_group
        hits = {0}
        for q, m in enumerate(a.vector.periods):
            d = a.vector.c_images[q]
            for ell in range(1, m):
                hits.update(h.conjugacy_class(_pow_idx(h, d, ell)))
        fixed_sets.append(hits)
    for e in range(1, g.order):
        if all(a.p_of(e) in hits for a, hits in zip(acts, fixed_sets)):
            return FreenessResult(False, e)
    return FreenessResult(True, None)


# ---------------------------------------------------------------------------
# The fundamental group.


@dataclass
class Pi1Result:
    """Presentation of the fundamental group plus its provenance."""

    presentation: Presentation
    raw_presentation: Presentation  # diagonal-lift generators, pre-simplification
    diagonal: DiagonalLiftGroup
    torsion: tuple[TorsionElement, ...]
    torsion_words: tuple[Word, ...]  # torsion normal forms over diagonal generators
    old_to_new: tuple[Word, ...]
    psi: tuple[int, ...]  # G element per surviving generator
    tietze_steps: int

    def transport(self, word: Word) -> Word:
        """Carry a diagonal-lift word into the simplified presentation."""
        return transport_word(word, self.old_to_new)


def torsion_word(diag: DiagonalLiftGroup, te: TorsionElement) -> Word:
    """A torsion normal form as a word over the diagonal lift's generators."""
    parts = []
    for j, lift in enumerate(diag.lifts):
        w = te.factors[j].word(lift.action.vector.genus)
        parts.append(lift.rewrite_pair(te.g, w))
    return diag.rewrite_factors(parts)


def build_pi1(
    actions: Sequence[CurveAction],
    max_cosets: int = DEFAULT_MAX_COSETS,
    tietze_steps: int = DEFAULT_TIETZE_STEPS,
) -> Pi1Result:
    lifts = [lift_group(a, max_cosets, tietze_steps) for a in actions]
    diag = diagonal_lift_group(lifts, max_cosets)
    torsion = torsion_generators(actions)
    words = []
    for te in torsion:
        w = torsion_word(diag, te)
        if w.is_identity():
            raise RuntimeError("torsion element rewrote to the identity")
        words.append(w)
    raw = quotient_presentation(diag.presentation, words)
    tz = tietze_simplify(raw, tietze_steps)
    positions = {name: i for i, name in enumerate(raw.gens)}
    psi = tuple(diag.psi[positions[name]] for name in tz.presentation.gens)
    return Pi1Result(
        tz.presentation,
        raw,
        diag,
        tuple(torsion),
        tuple(words),
        tz.old_to_new,
        psi,
        tz.steps_used,
    )


def pi1_presentation(
    actions: Sequence[CurveAction],
    max_cosets: int = DEFAULT_MAX_COSETS,
    tietze_steps: int = DEFAULT_TIETZE_STEPS,
) -> Presentation:
    return build_pi1(actions, max_cosets, tietze_steps).presentation


def lifted_orbifold_generators(res: Pi1Result, factor: int) -> list[Word]:
    """Images of one factor's orbifold generators in the simplified group.

    Each generator is paired with the least G element over its image and
    completed to an equal-image tuple by the other factors' sections.
    """
    diag = res.diagonal
    lifts = diag.lifts
    action = lifts[factor].action
    g = action.group
    images = action.vector.gen_images()
    out = []
    for x in range(action.orbifold().ngens):
        g_idx = next(e for e in range(g.order) if action.p_of(e) == images[x])
        parts = []
        for j, lift in enumerate(lifts):
            if j == factor:
                parts.append(lift.rewrite_pair(g_idx, Word(((x, 1),))))
            else:
                parts.append(lift.section[g_idx])
        out.append(res.transport(diag.rewrite_factors(parts)))
    return out


def curve_group_image_words(res: Pi1Result) -> list[Word]:
    """Generators of the image of the product of the curve groups.

    Per factor, Schreier generators of the orbifold map's kernel are
    rewritten into the lift, placed in an otherwise-trivial tuple, and
    carried through the simplification.
    """
    diag = res.diagonal
    out = []
    for j, lift in enumerate(diag.lifts):
        a = lift.action
        kws = kernel_subgroup_words(a.orbifold(), a.vector.gen_images(), a.acting_group)
        for kw in kws:
            parts = [Word()] * len(diag.lifts)
            parts[j] = lift.rewrite_pair(0, kw)
            out.append(res.transport(diag.rewrite_factors(parts)))
    return out


# ---------------------------------------------------------------------------
# Structure of the extension by the orbifold-quotient image.


@dataclass(frozen=True)
class VerificationReport:
    status: str  # "FOUND" | "FINITE" | "INCONCLUSIVE"
    index: Optional[int] = None
    free_rank: Optional[int] = None
    order: Optional[int] = None
    quotient: Optional[str] = None
    invariants: Optional[AbelianInvariants] = None
    detail: str = ""


@dataclass(frozen=True)
class StructureReport:
    quotient_signatures: tuple[Signature, ...]
    t_index_bound: int
    t_index_exact: bool
    e_order_bound: Optional[int]  # None: unbounded within budget
    e_order_exact: bool
    freeness: bool
    abelianization: AbelianInvariants
    pi1_order: Optional[int]  # None: not finite within budget
    orbifold_quotient_order: Optional[int]
    intersection_kernel_order: int
    verification: Optional[VerificationReport]
    notes: tuple[str, ...]


def kill_maps(
    actions: Sequence[CurveAction], torsion: Sequence[TorsionElement]
) -> list[dict[int, set[int]]]:
    """Per factor, the exponents of each period generator hit by torsion."""
    kills: list[dict[int, set[int]]] = [{} for _ in actions]
    for te in torsion:
        for j, f in enumerate(te.factors):
            if f.exponent:
                kills[j].setdefault(f.period_index, set()).add(f.exponent)
    return kills


def _sorted_kill(
    vector: GeneratingVector, kill: dict[int, set[int]]
) -> dict[int, tuple[int, ...]]:
    """Translate period indices from input order to signature (sorted) order."""
    slots: dict[int, list[int]] = {}
    for pos, m in enumerate(vector.signature.periods):
        slots.setdefault(m, []).append(pos)
    out: dict[int, tuple[int, ...]] = {}
    for q, m in enumerate(vector.periods):
        pos = slots[m].pop(0)
        if q in kill:
            out[pos] = tuple(sorted(kill[q]))
    return out


def quotient_signatures(
    actions: Sequence[CurveAction], kills: Sequence[dict[int, set[int]]]
) -> tuple[Signature, ...]:
    return tuple(
        quotient_signature(a.signature, _sorted_kill(a.vector, kill))
        for a, kill in zip(actions, kills)
    )


def _killed_orbifold(action: CurveAction, kill: dict[int, set[int]]) -> Presentation:
    genus = action.vector.genus
    extra = []
    for q in sorted(kill):
        for e in sorted(kill[q]):
            extra.append(Word(((2 * genus + q, e),)))
    return quotient_presentation(action.orbifold(), extra)


def _order_probe(p: Presentation, max_cosets: int) -> Optional[int]:
    try:
        return todd_coxeter(p, [], max_cosets).index
    except CosetOverflow:
        return None


def _regular_values(table: CosetTable) -> tuple[FiniteGroup, list[int]]:
    """Finite group of a complete table over the trivial subgroup, with the
    element index of each presentation generator."""
    n = table.index
    perms = [
        Permutation(tuple(int(table.table[c, 2 * x]) for c in range(n)))
        for x in range(table.presentation.ngens)
    ]
    nontrivial = [p for p in perms if not p.is_identity()]
    group = FiniteGroup(nontrivial, degree=n) if nontrivial else trivial_group(max(n, 1))
    return group, [group.element_index(p) for p in perms]


def _normal_closure_order(
    action: CurveAction, kill: dict[int, set[int]], max_cosets: int
) -> Optional[int]:
    """Order of the subgroup the kill relators normally generate, or None
    when some enumeration overflows (the closure may well be infinite)."""
    if not kill:
        return 1
    tpres = action.orbifold()
    try:
        qtable = todd_coxeter(_killed_orbifold(action, kill), [], max_cosets)
    except CosetOverflow:
        return None
    if qtable.index == 1:
        return _order_probe(tpres, max_cosets)
    quo, values = _regular_values(qtable)
    words = kernel_subgroup_words(tpres, values, quo)
    try:
        ktable = todd_coxeter(tpres, words, max_cosets)
    except CosetOverflow:
        return None
    sub = reidemeister_schreier(tpres, ktable, prefix="k")
    return _order_probe(sub.presentation, max_cosets)


def structure_from_pi1(
    res: Pi1Result,
    max_cosets: int = DEFAULT_MAX_COSETS,
    probe_cosets: int = DEFAULT_PROBE_COSETS,
    verify_index_bound: Optional[int] = None,
) -> StructureReport:
    acts = [lift.action for lift in res.diagonal.lifts]
    g = res.diagonal.group
    n = len(acts)
    notes: list[str] = []
    free = freeness_check(acts)
    kills = kill_maps(acts, res.torsion)
    sigs = quotient_signatures(acts, kills)
    killed = [_killed_orbifold(a, k) for a, k in zip(acts, kills)]
    prod = direct_product_presentation(killed)
    offs = product_offsets(killed)
    theta = []
    for gen in range(res.raw_presentation.ngens):
        w = Word()
        for j in range(n):
            w = w * res.diagonal.factor_words[j][gen].shift(offs[j])
        theta.append(w)
    ambient_index = g.order ** (n - 1)
    try:
        t_index = todd_coxeter(prod, theta, max_cosets).index
        t_exact = True
    except CosetOverflow:
        t_index = ambient_index
        t_exact = False
        notes.append("image index enumeration overflowed; reporting the a-priori bound")
    if ambient_index % t_index:
        raise RuntimeError("image index does not divide the ambient index")
    pi1_order = _order_probe(res.presentation, probe_cosets)
    orb_order = _order_probe(prod, probe_cosets)
    if pi1_order is None:
        notes.append("fundamental group not finite within the probe budget")
    if orb_order is None:
        notes.append("orbifold quotient product not finite within the probe budget")
    inter = len(_common_kernel(acts))
    if not any(kills):
        e_bound: Optional[int] = inter
        e_exact = inter == 1
        if not e_exact:
            notes.append("joint-kernel count reported as the kernel bound")
    elif pi1_order is not None and orb_order is not None and t_exact:
        if orb_order % t_index:
            raise RuntimeError("image order bookkeeping failed")
        t_order = orb_order // t_index
        if pi1_order % t_order:
            raise RuntimeError("kernel order bookkeeping failed")
        e_bound = pi1_order // t_order
        e_exact = True
    else:
        e_bound = inter
        e_exact = False
        for a, k in zip(acts, kills):
            size = _normal_closure_order(a, k, probe_cosets)
            if size is None:
                e_bound = None
                notes.append("kernel order unbounded within budget")
                break
            e_bound *= size
    verification = None
    if verify_index_bound is not None:
        verification = _verify(res, sigs, verify_index_bound, max_cosets, pi1_order)
    return StructureReport(
        sigs,
        t_index,
        t_exact,
        e_bound,
        e_exact,
        free.is_free,
        abelian_invariants(res.presentation),
        pi1_order,
        orb_order,
        inter,
        verification,
        tuple(notes),
    )


def structure_extension(
    actions: Sequence[CurveAction],
    max_cosets: int = DEFAULT_MAX_COSETS,
    tietze_steps: int = DEFAULT_TIETZE_STEPS,
    probe_cosets: int = DEFAULT_PROBE_COSETS,
    verify_index_bound: Optional[int] = None,
) -> StructureReport:
    res = build_pi1(actions, max_cosets, tietze_steps)
    return structure_from_pi1(res, max_cosets, probe_cosets, verify_index_bound)


# ---------------------------------------------------------------------------
# Bounded search for a finite-index product-of-surface-groups subgroup.


def _normal_closure_subgroup(g: FiniteGroup, seeds: set[int]) -> FiniteGroup:
    current = set(seeds) | {0}
    while True:
        gens = [g.elements[i] for i in sorted(current) if i]
        sub = FiniteGroup(gens, degree=g.degree, parent=g)
        closed = set(sub.parent_indices())
        extra = {g.conj_idx(h, s) for h in range(g.order) for s in closed}
        if extra <= closed:
            return sub
        current = closed | extra


def _quotient_catalogue(index_bound: int) -> list[tuple[str, FiniteGroup]]:
    out: list[tuple[str, FiniteGroup]] = []
    for m in range(2, index_bound + 1):
        out.append((f"cyclic({m})", cyclic_group(m)))
    for m in range(3, index_bound // 2 + 1):
        out.append((f"dihedral({m})", dihedral_group(m)))
    for a in range(2, index_bound + 1):
        for b in range(a, index_bound + 1):
            if a * b > index_bound:
                break
            out.append(
                (f"abelian({a}x{b})", direct_product_group(cyclic_group(a), cyclic_group(b)))
            )
    out.sort(key=lambda item: (item[1].order, item[0]))
    return out


def _surjections(p: Presentation, quo: FiniteGroup) -> Iterator[tuple[int, ...]]:
    k = p.ngens
    if k == 0 or quo.order**k > _HOM_TUPLE_BOUND:
        return
    for tup in itertools.product(range(quo.order), repeat=k):
        if any(evaluate_word(r, tup, quo) != 0 for r in p.relators):
            continue
        if _generated_order(quo, tup) != quo.order:
            continue
        yield tup


def _try_subgroup(
    pres: Presentation,
    desc: str,
    quo: FiniteGroup,
    values: Sequence[int],
    coset_budget: int,
) -> Optional[VerificationReport]:
    words = kernel_subgroup_words(pres, values, quo)
    try:
        table = todd_coxeter(pres, words, coset_budget)
    except CosetOverflow:
        return None
    if table.index != quo.order:
        raise RuntimeError("kernel enumeration disagrees with the quotient order")
    sub = reidemeister_schreier(pres, table, prefix="v")
    inv = abelian_invariants(sub.presentation)
    if not inv.torsion and inv.free_rank % 2 == 0:
        return VerificationReport(
            "FOUND",
            index=table.index,
            free_rank=inv.free_rank,
            quotient=desc,
            invariants=inv,
            detail="torsion-free abelianization of even rank",
        )
    return None


def _verify(
    res: Pi1Result,
    sigs: Sequence[Signature],
    index_bound: int,
    coset_budget: int,
    pi1_order_hint: Optional[int] = None,
) -> VerificationReport:
    if index_bound < 1 or coset_budget < 1:
        return VerificationReport("INCONCLUSIVE", detail="no search budget")
    pres = res.presentation
    order = pi1_order_hint
    if order is None:
        order = _order_probe(pres, coset_budget)
    if order is not None:
        return VerificationReport(
            "FINITE", order=order, detail="fundamental group is finite"
        )
    if not all(s.is_hyperbolic() for s in sigs):
        return VerificationReport(
            "INCONCLUSIVE", detail="quotient signatures are not all hyperbolic"
        )
    g = res.diagonal.group
    # canonical candidate: the acting group modulo the stabilizer images
    ns = _normal_closure_subgroup(g, {te.g for te in res.torsion})
    quo, proj = quotient(g, ns)
    if quo.order <= index_bound:
        values = tuple(proj.apply_idx(v) for v in res.psi)
        for rel in pres.relators:
            if evaluate_word(rel, values, quo) != 0:
                raise RuntimeError("acting-group images are not a homomorphism")
        report = _try_subgroup(
            pres, f"acting group mod stabilizers (order {quo.order})", quo, values,
            coset_budget,
        )
        if report is not None:
            return report
    for desc, cand in _quotient_catalogue(index_bound):
        for tup in _surjections(pres, cand):
            report = _try_subgroup(pres, desc, cand, tup, coset_budget)
            if report is not None:
                return report
    return VerificationReport(
        "INCONCLUSIVE", detail="no qualifying subgroup within budget"
    )


def verify_surface_subgroup(
    actions: Sequence[CurveAction],
    index_bound: int = DEFAULT_INDEX_BOUND,
    coset_budget: int = DEFAULT_MAX_COSETS,
    tietze_steps: int = DEFAULT_TIETZE_STEPS,
) -> VerificationReport:
    res = build_pi1(actions, coset_budget, tietze_steps)
    return verify_from_pi1(res, index_bound, coset_budget)


def verify_from_pi1(
    res: Pi1Result,
    index_bound: int = DEFAULT_INDEX_BOUND,
    coset_budget: int = DEFAULT_MAX_COSETS,
    pi1_order_hint: Optional[int] = None,
) -> VerificationReport:
    acts = [lift.action for lift in res.diagonal.lifts]
    kills = kill_maps(acts, res.torsion)
    sigs = quotient_signatures(acts, kills)
    return _verify(res, sigs, index_bound, coset_budget, pi1_order_hint)
