"""Coset-table scan kernel for relator-driven coset enumeration.

Words arrive column-coded: generator g forward is column 2*g, backward is
2*g + 1, so the inverse of a column is column ^ 1.  Dead cosets are tracked
through a union-find array ``p`` whose merges always keep the smaller label,
and coincidences are processed through a FIFO queue.  The module is plain
Python over numpy arrays; ``backend.maybe_jit`` compiles it when enabled.
"""

from __future__ import annotations

import numpy as np

from .backend import maybe_jit

OK = 0
OVERFLOW = 1


@maybe_jit
def _rep(p, k):
    r = k
    while p[r] != r:
        r = p[r]
    c = k
    while c != r:
        nxt = p[c]
        p[c] = r
        c = nxt
    return r


@maybe_jit
def _merge(p, queue, qt, a, b):
    ra = _rep(p, a)
    rb = _rep(p, b)
    if ra != rb:
        if ra < rb:
            mu, v = ra, rb
        else:
            mu, v = rb, ra
        p[v] = mu
        queue[qt] = v
        qt += 1
    return qt


@maybe_jit
def _coincidence(table, p, queue, a, b):
    ncols = table.shape[1]
    qh = 0
    qt = _merge(p, queue, 0, a, b)
    while qh < qt:
        gamma = queue[qh]
        qh += 1
        for x in range(ncols):
            delta = table[gamma, x]
            if delta >= 0:
                table[delta, x ^ 1] = -1
                mu = _rep(p, gamma)
                nu = _rep(p, delta)
                if table[mu, x] >= 0:
                    qt = _merge(p, queue, qt, nu, table[mu, x])
                elif table[nu, x ^ 1] >= 0:
                    qt = _merge(p, queue, qt, mu, table[nu, x ^ 1])
                else:
                    table[mu, x] = nu
                    table[nu, x ^ 1] = mu


@maybe_jit
def _grow(table, p, queue, max_cosets):
    cap = table.shape[0]
    newcap = cap * 2
    if newcap > max_cosets:
        newcap = max_cosets
    t2 = np.full((newcap, table.shape[1]), -1, dtype=np.int64)
    t2[:cap] = table
    p2 = np.zeros(newcap, dtype=np.int64)
    p2[:cap] = p
    q2 = np.zeros(newcap, dtype=np.int64)
    q2[:cap] = queue
    return t2, p2, q2


@maybe_jit
def _scan_and_fill(table, p, queue, alpha, w, lo, hi, n, max_cosets):
    """Scan one word at one coset, defining cosets to finish the scan."""
    f = alpha
    i = lo
    b = alpha
    j = hi - 1
    while True:
        while i <= j and table[f, w[i]] >= 0:
            f = table[f, w[i]]
            i += 1
        if i > j:
            if f != b:
                _coincidence(table, p, queue, f, b)
            return table, p, queue, n, OK
        while j >= i and table[b, w[j] ^ 1] >= 0:
            b = table[b, w[j] ^ 1]
            j -= 1
        if j < i:
            _coincidence(table, p, queue, f, b)
            return table, p, queue, n, OK
        if j == i:
            table[f, w[i]] = b
            table[b, w[i] ^ 1] = f
            return table, p, queue, n, OK
        if n >= max_cosets:
            return table, p, queue, n, OVERFLOW
        if n == table.shape[0]:
            table, p, queue = _grow(table, p, queue, max_cosets)
        beta = n
        n += 1
        p[beta] = beta
        table[f, w[i]] = beta
        table[beta, w[i] ^ 1] = f


@maybe_jit
def hlt_enumerate(ncols, rel_flat, rel_off, sub_flat, sub_off, max_cosets):
    """Relator-scan enumeration; returns (status, table, parents, ndefined)."""
    cap = 64
    if cap > max_cosets:
        cap = max_cosets
    if cap < 1:
        cap = 1
    table = np.full((cap, ncols), -1, dtype=np.int64)
    p = np.zeros(cap, dtype=np.int64)
    queue = np.zeros(cap, dtype=np.int64)
    n = 1
    nrel = rel_off.shape[0] - 1
    nsub = sub_off.shape[0] - 1
    for s in range(nsub):
        table, p, queue, n, st = _scan_and_fill(
            table, p, queue, 0, sub_flat, sub_off[s], sub_off[s + 1], n, max_cosets
        )
        if st != OK:
            return st, table, p, n
    alpha = 0
    while alpha < n:
        if p[alpha] == alpha:
            died = False
            for r in range(nrel):
                table, p, queue, n, st = _scan_and_fill(
                    table, p, queue, alpha, rel_flat, rel_off[r], rel_off[r + 1], n, max_cosets
                )
                if st != OK:
                    return st, table, p, n
                if p[alpha] != alpha:
                    died = True
                    break
            if not died:
                for x in range(ncols):
                    if table[alpha, x] < 0:
                        if n >= max_cosets:
                            return OVERFLOW, table, p, n
                        if n == table.shape[0]:
                            table, p, queue = _grow(table, p, queue, max_cosets)
                        beta = n
                        n += 1
                        p[beta] = beta
                        table[alpha, x] = beta
                        table[beta, x ^ 1] = alpha
        alpha += 1
    return OK, table, p, n
