#!/usr/bin/env python3
"""Benchmark the coset-enumeration kernel: compiled vs pure-Python backend.

Runs a fixed set of classical enumerations with the current backend, then
re-runs them in a subprocess with PRODQUOT_NO_JIT=1 and prints a comparison
table.  Fails (exit 1) if any index is wrong or the two backends produce
different coset tables.

Usage:  python3 benchmarks/bench_enumeration.py [--repeats N] [--json]
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import subprocess
import sys
import time

from prodquot import backend
from prodquot.coset import todd_coxeter
from prodquot.presentation import presentation

# (name, generators, relators, subgroup words, expected index)
CASES = [
    (
        "triangle-2-3-7-mod-commutator-4",
        ["a", "b"],
        [
            "a^2",
            "b^3",
            "a*b*a*b*a*b*a*b*a*b*a*b*a*b",
            "a*b*a^-1*b^-1*a*b*a^-1*b^-1*a*b*a^-1*b^-1*a*b*a^-1*b^-1",
        ],
        [],
        168,
    ),
    (
        "fibonacci-2-7",
        list("abcdefg"),
        [
            "a*b*c^-1",
            "b*c*d^-1",
            "c*d*e^-1",
            "d*e*f^-1",
            "e*f*g^-1",
            "f*g*a^-1",
            "g*a*b^-1",
        ],
        [],
        29,
    ),
    (
        "coxeter-6-6-order-3000",
        ["a", "b"],
        [
            "a^6",
            "b^6",
            "a*b*a*b",
            "a^2*b^2*a^2*b^2",
            "a^3*b^3*a^3*b^3*a^3*b^3*a^3*b^3*a^3*b^3",
        ],
        [],
        3000,
    ),
    (
        "coxeter-6-6-index-500",
        ["a", "b"],
        [
            "a^6",
            "b^6",
            "a*b*a*b",
            "a^2*b^2*a^2*b^2",
            "a^3*b^3*a^3*b^3*a^3*b^3*a^3*b^3*a^3*b^3",
        ],
        ["a"],
        500,
    ),
    (
        "8-7-with-2-3-order-10752",
        ["a", "b"],
        ["a^8", "b^7", "a*b*a*b", "a^-1*b*a^-1*b*a^-1*b"],
        [],
        10752,
    ),
]

MAX_COSETS = 2_000_000


def run_cases(repeats: int) -> list[dict]:
    backend.warmup()
    out = []
    for name, gens, rels, sub, expected in CASES:
        p = presentation(gens, rels)
        sub_words = [p.word(w) for w in sub]
        best = float("inf")
        table = None
        for _ in range(repeats):
            start = time.perf_counter()
            table = todd_coxeter(p, sub_words, max_cosets=MAX_COSETS)
            best = min(best, time.perf_counter() - start)
        out.append(
            {
                "name": name,
                "index": table.index,
                "expected": expected,
                "seconds": best,
                "md5": hashlib.md5(table.table.tobytes()).hexdigest(),
            }
        )
    return out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3, help="best-of repeat count")
    parser.add_argument(
        "--json", action="store_true", help="emit raw results as JSON (used internally)"
    )
    args = parser.parse_args()

    results = run_cases(args.repeats)
    if args.json:
        print(json.dumps({"backend": backend.backend_name(), "results": results}))
        return 0

    if backend.backend_name() != "numba":
        print(
            "warning: compiled backend unavailable in this interpreter; "
            "comparing pure-Python against itself",
            file=sys.stderr,
        )

    env = dict(os.environ, PRODQUOT_NO_JIT="1")
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--json", "--repeats", str(args.repeats)],
        env=env,
        capture_output=True,
        text=True,
    )
    if proc.returncode != 0:
        print(proc.stderr, file=sys.stderr)
        return 1
    other = json.loads(proc.stdout)
    assert other["backend"] == "python", other["backend"]

    width = max(len(r["name"]) for r in results)
    print(f"{'case':<{width}}  {'index':>6}  {backend.backend_name():>9}  {'python':>9}  {'speedup':>7}  tables")
    ok = True
    for mine, theirs in zip(results, other["results"]):
        same = mine["md5"] == theirs["md5"]
        good = mine["index"] == mine["expected"] and theirs["index"] == theirs["expected"]
        ok = ok and same and good
        speedup = theirs["seconds"] / mine["seconds"] if mine["seconds"] else float("inf")
        print(
            f"{mine['name']:<{width}}  {mine['index']:>6}  "
            f"{mine['seconds']:>8.3f}s  {theirs['seconds']:>8.3f}s  "
            f"{speedup:>6.1f}x  {'match' if same else 'DIFFER'}"
            f"{'' if good else '  WRONG INDEX'}"
        )
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
