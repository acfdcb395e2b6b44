"""Kernel backend selection.

The coset-table scan kernel in ``_scan`` is written once as plain Python over
numpy arrays.  By default it is compiled with numba; setting PRODQUOT_NO_JIT=1
(or the standard NUMBA_DISABLE_JIT) selects the uncompiled path.  Both paths
run the same source, so tables are identical either way.
"""

from __future__ import annotations

import os


def jit_requested() -> bool:
    for flag in ("PRODQUOT_NO_JIT", "NUMBA_DISABLE_JIT"):
        if os.environ.get(flag, "").strip() not in ("", "0"):
            return False
    return True


_name = "python"
if jit_requested():
    try:
        from numba import njit as _njit

        def maybe_jit(fn):
            return _njit(cache=True)(fn)

        _name = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency

        def maybe_jit(fn):
            return fn

else:

    def maybe_jit(fn):
        return fn


def backend_name() -> str:
    return _name


def warmup() -> None:
    """Trigger kernel compilation with a tiny enumeration."""
    from . import coset, presentation

    p = presentation.presentation(["a"], ["a^2"])
    coset.todd_coxeter(p, [], max_cosets=16)
