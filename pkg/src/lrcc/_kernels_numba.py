"""Numba-jitted GF(2^w) kernels: the default backend for the hot loops.

Mirror of _kernels_numpy with identical signatures and results.  Kernels are
nopython + nogil so sweep workers can run them from threads.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"

_JIT = dict(cache=True, nogil=True)


@njit(**_JIT)
def matmul(a, b, exp, log, qm1):
    m, p = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), dtype=np.uint16)
    for i in range(m):
        for k in range(p):
            av = a[i, k]
            if av == 0:
                continue
            la = log[av]
            for j in range(n):
                bv = b[k, j]
                if bv != 0:
                    out[i, j] ^= exp[la + log[bv]]
    return out


@njit(**_JIT)
def rank(m, exp, log, qm1):
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(c, cols):
                tmp = m[r, j]
                m[r, j] = m[p, j]
                m[p, j] = tmp
        linv = (qm1 - log[m[r, c]]) % qm1
        for i in range(r + 1, rows):
            if m[i, c] == 0:
                continue
            lfac = (log[m[i, c]] + linv) % qm1
            for j in range(c, cols):
                v = m[r, j]
                if v != 0:
                    m[i, j] ^= exp[log[v] + lfac]
        r += 1
    return r


@njit(**_JIT)
def rref(m, exp, log, qm1):
    rows, cols = m.shape
    piv_cols = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(c, cols):
                tmp = m[r, j]
                m[r, j] = m[p, j]
                m[p, j] = tmp
        linv = (qm1 - log[m[r, c]]) % qm1
        for j in range(c, cols):
            v = m[r, j]
            if v != 0:
                m[r, j] = exp[log[v] + linv]
        for i in range(rows):
            if i == r or m[i, c] == 0:
                continue
            lf = log[m[i, c]]
            for j in range(c, cols):
                v = m[r, j]
                if v != 0:
                    m[i, j] ^= exp[log[v] + lf]
        piv_cols[r] = c
        r += 1
    return r, piv_cols[:r]


@njit(**_JIT)
def scan_patterns(h, patterns, alpha, exp, log, qm1):
    num, s = patterns.shape
    hrows = h.shape[0]
    want = s * alpha
    sub = np.empty((want, hrows), dtype=np.uint16)
    out = np.zeros(num, dtype=np.uint8)
    for i in range(num):
        for e in range(s):
            base = patterns[i, e] * alpha
            for a in range(alpha):
                for rr in range(hrows):
                    sub[e * alpha + a, rr] = h[rr, base + a]
        if rank(sub, exp, log, qm1) == want:
            out[i] = 1
    return out
