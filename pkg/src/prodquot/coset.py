"""Coset enumeration over finite presentations.

The enumeration strategy is relator-scan driven: every live coset scans every
relator, gaps are filled by defining the first missing table entry.  Completed
tables are compressed and standardized, so for a fixed presentation, subgroup
words and budget the resulting table is byte-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _scan
from .presentation import Presentation
from .words import Word


class CosetOverflow(RuntimeError):
    """Coset allocation exceeded the budget; retry with a larger one."""

    def __init__(self, defined: int, max_cosets: int):
        super().__init__(f"coset enumeration exceeded {max_cosets} cosets")
        self.defined = defined
        self.max_cosets = max_cosets


def word_to_cols(word: Word) -> list[int]:
    cols = []
    for g, s in word.single_letters():
        cols.append(2 * g if s > 0 else 2 * g + 1)
    return cols


def _flatten(words: Sequence[list[int]]) -> tuple[np.ndarray, np.ndarray]:
    flat = [c for w in words for c in w]
    off = [0]
    for w in words:
        off.append(off[-1] + len(w))
    return (
        np.asarray(flat, dtype=np.int64),
        np.asarray(off, dtype=np.int64),
    )


@dataclass
class CosetTable:
    """Complete, standardized coset table of a subgroup.

    ``table[c, 2g]`` is the target of coset c under generator g, ``2g + 1``
    under its inverse.  Coset 0 is the subgroup itself.  Immutable by
    convention once built; safe to share across threads.
    """

    presentation: Presentation
    subgroup_words: tuple[Word, ...]
    table: np.ndarray
    tree: tuple[tuple[int, int], ...]  # per coset > 0: (parent coset, column)

    @property
    def index(self) -> int:
        return int(self.table.shape[0])

    def trace(self, coset: int, word: Word) -> int:
        c = coset
        for col in word_to_cols(word):
            c = int(self.table[c, col])
        return c

    def trace_cols(self, coset: int, cols: Iterable[int]) -> int:
        c = coset
        for col in cols:
            c = int(self.table[c, col])
        return c

    def transversal(self) -> list[Word]:
        """Schreier representatives: words carrying coset 0 to each coset."""
        reps: list[Word] = [Word()] * self.index
        for c in range(1, self.index):
            parent, col = self.tree[c - 1]
            g, s = col // 2, (1 if col % 2 == 0 else -1)
            reps[c] = reps[parent] * Word(((g, s),))
        return reps


def todd_coxeter(
    p: Presentation,
    subgroup_words: Sequence[Word] = (),
    max_cosets: int = 100_000,
) -> CosetTable:
    """Enumerate cosets of the subgroup generated by the given words.

    Raises CosetOverflow when more than max_cosets cosets would be allocated
    (dead ones included).  Deterministic for fixed inputs.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    sub = tuple(subgroup_words)
    if p.ngens == 0:
        table = np.zeros((1, 0), dtype=np.int64)
        return CosetTable(p, sub, table, ())
    ncols = 2 * p.ngens
    rel_cols = [w for w in (word_to_cols(r) for r in p.relators) if w]
    sub_cols = [w for w in (word_to_cols(s) for s in sub) if w]
    rel_flat, rel_off = _flatten(rel_cols)
    sub_flat, sub_off = _flatten(sub_cols)
    status, raw, parents, ndef = _scan.hlt_enumerate(
        ncols, rel_flat, rel_off, sub_flat, sub_off, max_cosets
    )
    if status == _scan.OVERFLOW:
        raise CosetOverflow(int(ndef), max_cosets)
    table, tree = _compress_standardize(raw[:ndef], parents[:ndef])
    return CosetTable(p, sub, table, tree)


def _compress_standardize(raw: np.ndarray, parents: np.ndarray):
    ndef, ncols = raw.shape
    roots = parents.copy()
    while True:
        nxt = roots[roots]
        if np.array_equal(nxt, roots):
            break
        roots = nxt
    live = np.flatnonzero(roots == np.arange(ndef))
    m = live.shape[0]
    remap = np.full(ndef, -1, dtype=np.int64)
    remap[live] = np.arange(m)
    t = raw[live]
    if (t < 0).any():
        raise AssertionError("incomplete coset table after enumeration")
    t = remap[roots[t]]
    # standardize: relabel cosets in first-visit row-major order
    new = np.full(m, -1, dtype=np.int64)
    new[0] = 0
    seq = [0]
    tree: list[tuple[int, int]] = [(-1, -1)] * m
    count = 1
    for idx in seq:
        row = t[idx]
        for x in range(ncols):
            tgt = int(row[x])
            if new[tgt] < 0:
                new[tgt] = count
                tree[count - 1] = (int(new[idx]), x)
                count += 1
                seq.append(tgt)
    if count != m:
        raise AssertionError("coset table is not transitive")
    std = new[t[np.argsort(new)]]
    return std, tuple(tree[: m - 1])
