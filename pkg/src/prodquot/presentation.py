"""Finite presentations: construction, products, quotients, simplification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .abelian import AbelianInvariants, invariants_from_matrix
from .words import (
    Word,
    _NAME,
    format_word,
    free_reduce,
    parse_word,
    signed_letters,
    word_from_letters,
)


@dataclass(frozen=True)
class Presentation:
    """Generators (by name) and freely reduced relator words."""

    gens: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for name in self.gens:
            if not _NAME.fullmatch(name):
                raise ValueError(f"bad generator name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate generator name {name!r}")
            seen.add(name)
        for rel in self.relators:
            if rel.max_generator() >= len(self.gens):
                raise ValueError("relator uses an unknown generator")

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def name_to_id(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.gens)}

    def word(self, text: str) -> Word:
        return parse_word(text, self.name_to_id())

    def text(self, word: Word) -> str:
        return format_word(word, self.gens)

    def relator_texts(self) -> list[str]:
        return [self.text(r) for r in self.relators]


def presentation(gen_names: Sequence[str], relator_texts: Iterable[str] = ()) -> Presentation:
    p = Presentation(tuple(gen_names))
    rels = tuple(p.word(t) for t in relator_texts)
    return Presentation(p.gens, rels)


def abelian_invariants(p: Presentation) -> AbelianInvariants:
    matrix = [r.exponent_sums(p.ngens) for r in p.relators]
    matrix = [row for row in matrix if any(row)]
    return invariants_from_matrix(matrix, p.ngens)


def direct_product_presentation(factors: Sequence[Presentation]) -> Presentation:
    """Presentation of the direct product: factor relators plus cross commutators.

    Generator names are kept when globally unique, otherwise every generator is
    prefixed with its factor index so the result is deterministic.
    """
    if not factors:
        return Presentation(())
    if len(factors) == 1:
        return factors[0]
    all_names = [n for f in factors for n in f.gens]
    if len(set(all_names)) == len(all_names):
        names = tuple(all_names)
    else:
        names = tuple(f"f{i}_{n}" for i, f in enumerate(factors) for n in f.gens)
    offsets = []
    total = 0
    for f in factors:
        offsets.append(total)
        total += f.ngens
    relators: list[Word] = []
    for f, off in zip(factors, offsets):
        relators.extend(r.shift(off) for r in f.relators)
    for i, (fi, offi) in enumerate(zip(factors, offsets)):
        for fj, offj in list(zip(factors, offsets))[i + 1 :]:
            for a in range(fi.ngens):
                for b in range(fj.ngens):
                    x, y = a + offi, b + offj
                    relators.append(Word(((x, 1), (y, 1), (x, -1), (y, -1))))
    return Presentation(names, tuple(relators))


def product_offsets(factors: Sequence[Presentation]) -> list[int]:
    offsets = []
    total = 0
    for f in factors:
        offsets.append(total)
        total += f.ngens
    return offsets


def quotient_presentation(p: Presentation, extra: Iterable[Word]) -> Presentation:
    added = tuple(w for w in extra if not w.is_identity())
    for w in added:
        if w.max_generator() >= p.ngens:
            raise ValueError("extra relator uses an unknown generator")
    return Presentation(p.gens, p.relators + added)


# ---------------------------------------------------------------------------
# Tietze simplification.  Internally relators live as lists of signed single
# letters +-(gen+1), which makes substitution and overlap search direct.

_OVERLAP_MAX_RELATORS = 48
_OVERLAP_MAX_LEN = 512
_OVERLAP_RULE_MAX = 64


@dataclass(frozen=True)
class TietzeResult:
    presentation: Presentation
    old_to_new: tuple[Word, ...]  # original generator -> word in surviving gens
    steps_used: int


def _reduce_letters(letters: list[int]) -> list[int]:
    out: list[int] = []
    for c in letters:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return out


def _cyclic_reduce(letters: list[int]) -> list[int]:
    w = _reduce_letters(letters)
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def _inv_letters(letters: Sequence[int]) -> list[int]:
    return [-c for c in reversed(letters)]


def _least_rotation(s: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation (Booth's algorithm, O(n))."""
    n = len(s)
    doubled = list(s) + list(s)
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = doubled[j]
        i = f[j - k - 1]
        while i != -1 and sj != doubled[k + i + 1]:
            if sj < doubled[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != doubled[k + i + 1]:
            if sj < doubled[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return tuple(doubled[k : k + n])


def _canonical_cyclic(letters: Sequence[int]) -> tuple[int, ...]:
    if not letters:
        return ()
    return min(_least_rotation(letters), _least_rotation(_inv_letters(letters)))


def _substitute(letters: list[int], gen: int, image: list[int]) -> list[int]:
    """Replace letter +-(gen+1) by image / its inverse, then reduce."""
    out: list[int] = []
    target = gen + 1
    inv_image = _inv_letters(image)
    for c in letters:
        if c == target:
            out.extend(image)
        elif c == -target:
            out.extend(inv_image)
        else:
            out.append(c)
    return _reduce_letters(out)


def tietze_simplify(p: Presentation, budget: int = 10000) -> TietzeResult:
    """Simplify a presentation without ever adding generators.

    Moves: free/cyclic reduction, duplicate and trivial relator removal,
    elimination of a generator that occurs exactly once in some relator, and
    substitution of long relator overlaps.  Deterministic; the overlap phase
    is skipped for oversized presentations (fixed thresholds).
    """
    work = [_cyclic_reduce(signed_letters(r)) for r in p.relators]
    work = [w for w in work if w]
    names = list(p.gens)
    # original generator -> letters over current generators
    old_to_new: list[list[int]] = [[g + 1] for g in range(p.ngens)]
    steps = 0
    # dead generators keep their numbers until the final compaction so that
    # untouched relators keep their cached data verbatim
    alive = [True] * p.ngens
    keys = [_canonical_cyclic(w) for w in work]

    def once_gen(letters: list[int]) -> Optional[int]:
        """Least generator occurring exactly once, if any."""
        counts: dict[int, int] = {}
        for c in letters:
            a = abs(c) - 1
            counts[a] = counts.get(a, 0) + 1
        return min((g for g, k in counts.items() if k == 1), default=None)

    gsets = [{abs(c) - 1 for c in w} for w in work]
    onces = [once_gen(w) for w in work]

    def dedup() -> None:
        seen: set[tuple[int, ...]] = set()
        kept = []
        for i, key in enumerate(keys):
            if key and key not in seen:
                seen.add(key)
                kept.append(i)
        work[:] = [work[i] for i in kept]
        keys[:] = [keys[i] for i in kept]
        gsets[:] = [gsets[i] for i in kept]
        onces[:] = [onces[i] for i in kept]

    def refresh(i: int) -> None:
        keys[i] = _canonical_cyclic(work[i])
        gsets[i] = {abs(c) - 1 for c in work[i]}
        onces[i] = once_gen(work[i])

    dedup()
    changed = True
    while changed and steps < budget:
        changed = False
        # generator elimination: prefer the shortest defining relator
        best = None
        for ri, g in enumerate(onces):
            if g is not None:
                rank = (len(work[ri]), ri, g)
                if best is None or rank < best:
                    best = rank
        if best is not None:
            _, ri, gen = best
            rel = work[ri]
            pos = next(i for i, c in enumerate(rel) if abs(c) - 1 == gen)
            rest = rel[pos + 1 :] + rel[:pos]
            image = _inv_letters(rest) if rel[pos] > 0 else list(rest)
            del work[ri], keys[ri], gsets[ri], onces[ri]
            for i in range(len(work)):
                if gen in gsets[i]:
                    work[i] = _cyclic_reduce(_substitute(work[i], gen, image))
                    refresh(i)
            target = gen + 1
            for i, w in enumerate(old_to_new):
                if any(c == target or c == -target for c in w):
                    old_to_new[i] = _substitute(w, gen, image)
            alive[gen] = False
            steps += 1
            changed = True
            dedup()
            continue
        # overlap substitution, gated by size
        if len(work) <= _OVERLAP_MAX_RELATORS:
            hit = False
            for i, rule in enumerate(work):
                ell = len(rule)
                if ell < 2 or ell > _OVERLAP_RULE_MAX:
                    continue
                half = ell // 2 + 1
                variants = []
                doubled = rule + rule
                inv = _inv_letters(rule)
                inv_doubled = inv + inv
                for s in range(ell):
                    variants.append(doubled[s : s + ell])
                    variants.append(inv_doubled[s : s + ell])
                for j, target_rel in enumerate(work):
                    if j == i or len(target_rel) > _OVERLAP_MAX_LEN or len(target_rel) < half:
                        continue
                    for var in variants:
                        head, tail = var[:half], var[half:]
                        for s in range(len(target_rel) - half + 1):
                            if target_rel[s : s + half] == head:
                                newrel = target_rel[:s] + _inv_letters(tail) + target_rel[s + half :]
                                newrel = _cyclic_reduce(newrel)
                                if len(newrel) < len(target_rel):
                                    if newrel:
                                        work[j] = newrel
                                        refresh(j)
                                    else:
                                        del work[j], keys[j], gsets[j], onces[j]
                                    steps += 1
                                    hit = True
                                    break
                        if hit:
                            break
                    if hit:
                        break
                if hit:
                    break
            if hit:
                dedup()
                changed = True
                continue

    # compact the numbering to the surviving generators
    rank = [0] * p.ngens
    kept_names = []
    for g, keep in enumerate(alive):
        rank[g] = len(kept_names)
        if keep:
            kept_names.append(names[g])

    def compact(letters: list[int]) -> list[int]:
        return [(rank[abs(c) - 1] + 1) * (1 if c > 0 else -1) for c in letters]

    work = [compact(w) for w in work]
    old_to_new = [compact(w) for w in old_to_new]
    work.sort(key=lambda w: (len(w), w))
    out = Presentation(tuple(kept_names), tuple(word_from_letters(w) for w in work))
    mapping = tuple(word_from_letters(w) for w in old_to_new)
    return TietzeResult(out, mapping, steps)


def transport_word(word: Word, mapping: Sequence[Word]) -> Word:
    """Rewrite a word over original generators through a Tietze mapping."""
    out = Word()
    for g, e in word.letters:
        out = out * (mapping[g] ** e)
    return out
