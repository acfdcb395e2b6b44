"""Tests for coset enumeration over finite presentations."""

import hashlib
import os
import subprocess
import sys

import pytest

from prodquot import backend
from prodquot.corpus import build_corpus
from prodquot.coset import CosetOverflow, todd_coxeter
from prodquot.perm import symmetric_group
from prodquot.presentation import Presentation, presentation
from prodquot.rewrite import evaluate_word
from prodquot.words import Word


def test_cyclic_five_has_five_cosets():
    p = presentation(["a"], ["a^5"])
    t = todd_coxeter(p)
    assert t.index == 5
    # Powers of the generator hit every coset exactly once.
    cosets = {t.trace(0, p.word("a") ** k) for k in range(5)}
    assert cosets == set(range(5))


def test_order_six_presentation():
    p = presentation(["a", "b"], ["a^2", "b^3", "a*b*a*b"])
    t = todd_coxeter(p)
    assert t.index == 6
    # Independent lower bound: the relators hold for a transposition and a
    # 3-cycle, whose images generate all six permutations of three points.
    s3 = symmetric_group(3)
    images = [s3.element_index(s3.generators[0]), s3.element_index(s3.generators[1])]
    for rel in p.relators:
        assert evaluate_word(rel, images, s3) == 0
    assert s3.order == 6


def test_subgroup_of_all_generators_gives_one_coset():
    for p in (
        presentation(["a"], ["a^5"]),
        presentation(["a", "b"], ["a^2", "b^3", "a*b*a*b"]),
        presentation(["x", "y"], ["x^4", "y^4", "x*y*x^-1*y^-1"]),
    ):
        whole = [p.word(name) for name in p.gens]
        assert todd_coxeter(p, whole).index == 1


def test_trivial_subgroup_index_matches_group_order():
    for entry in build_corpus():
        if entry.group.order > 200:
            continue
        t = todd_coxeter(entry.presentation, (), max_cosets=20_000)
        assert t.index == entry.group.order, entry.name


def test_cyclic_subgroup_index_matches_brute_force():
    for entry in build_corpus()[:12]:
        p, g = entry.presentation, entry.group
        if p.ngens == 0 or g.order > 200:
            continue
        t = todd_coxeter(p, [p.word(p.gens[0])], max_cosets=20_000)
        # Brute force: count right cosets H\G of the cyclic subgroup
        # generated by the first generator's image, by direct partition.
        h0 = entry.gen_images[0]
        powers = {0}
        acc = h0
        while acc != 0:
            powers.add(acc)
            acc = g.mul_idx(acc, h0)
        seen: set[int] = set()
        count = 0
        for a in range(g.order):
            if a in seen:
                continue
            count += 1
            seen |= {g.mul_idx(h, a) for h in powers}
        assert t.index == count, entry.name


def test_table_is_closed_and_consistent():
    p = presentation(["a", "b"], ["a^4", "b^4", "a*b*a^-1*b^-1"])
    sub = [p.word("a*b")]
    t = todd_coxeter(p, sub)
    n, ncols = t.table.shape
    assert ncols == 2 * p.ngens
    assert ((t.table >= 0) & (t.table < n)).all()
    for g in range(p.ngens):
        for c in range(n):
            fwd = int(t.table[c, 2 * g])
            assert int(t.table[fwd, 2 * g + 1]) == c
    for c in range(n):
        for rel in p.relators:
            assert t.trace(c, rel) == c
    for w in sub:
        assert t.trace(0, w) == 0


def test_transversal_reaches_every_coset():
    p = presentation(["a", "b"], ["a^2", "b^3", "a*b*a*b"])
    t = todd_coxeter(p)
    reps = t.transversal()
    assert len(reps) == t.index
    assert reps[0].is_identity()
    assert [t.trace(0, rep) for rep in reps] == list(range(t.index))


def test_overflow_reports_budget():
    free2 = presentation(["a", "b"])
    with pytest.raises(CosetOverflow) as exc:
        todd_coxeter(free2, (), max_cosets=50)
    assert exc.value.max_cosets == 50
    assert exc.value.defined >= 50
    # A finite group still overflows when the budget is below its index.
    small = presentation(["a", "b"], ["a^2", "b^3", "a*b*a*b"])
    with pytest.raises(CosetOverflow):
        todd_coxeter(small, (), max_cosets=2)
    with pytest.raises(ValueError):
        todd_coxeter(small, (), max_cosets=0)


def test_empty_presentation():
    t = todd_coxeter(Presentation(()))
    assert t.index == 1
    assert t.table.shape == (1, 0)


_COX_RELATORS = [
    "a^6",
    "b^6",
    "a*b*a*b",
    "a^2*b^2*a^2*b^2",
    "a^3*b^3*a^3*b^3*a^3*b^3*a^3*b^3*a^3*b^3",
]


def test_enumeration_is_deterministic():
    p = presentation(["a", "b"], _COX_RELATORS)
    t1 = todd_coxeter(p, [p.word("a")])
    t2 = todd_coxeter(p, [p.word("a")])
    assert t1.index == 500
    assert t1.table.tobytes() == t2.table.tobytes()
    assert t1.tree == t2.tree


_FIXED_CASES = [
    (["a"], ["a^12"], []),
    (["a", "b"], ["a^2", "b^3", "a*b*a*b"], ["a"]),
    (["a", "b"], ["a^4", "b^4", "a*b*a^-1*b^-1"], ["a*b^2"]),
    (["a", "b"], _COX_RELATORS, ["a"]),
]


def _case_digests() -> list[str]:
    out = []
    for gens, rels, sub in _FIXED_CASES:
        p = presentation(gens, rels)
        t = todd_coxeter(p, [p.word(w) for w in sub], max_cosets=50_000)
        out.append(hashlib.md5(t.table.tobytes()).hexdigest())
    return out


def test_jit_and_pure_python_backends_agree():
    """The interpreted kernel must produce byte-identical tables."""
    here = _case_digests()
    prog = (
        "from tests.test_coset import _case_digests\n"
        "import prodquot.backend as b\n"
        "assert b.backend_name() == 'python', b.backend_name()\n"
        "print('\\n'.join(_case_digests()))\n"
    )
    env = dict(os.environ, PRODQUOT_NO_JIT="1")
    proc = subprocess.run(
        [sys.executable, "-c", prog],
        cwd=os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
        env=env,
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.split() == here
    # This in-process interpreter keeps whatever backend it started with.
    assert backend.backend_name() in ("numba", "python")
