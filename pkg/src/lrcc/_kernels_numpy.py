"""Pure-numpy GF(2^w) kernels: the fallback backend.

Same signatures and semantics as the numba backend.  Elements are uint16
values; `exp`/`log` are the field's discrete-log tables (exp doubled so that
``exp[log[a] + log[b]]`` never needs a modulo).  All kernels treat inputs as
read-only except where noted.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"


def _mul_rows(a, b, exp, log):
    """Elementwise product of two equal-shape uint16 arrays."""
    out = exp[log[a] + log[b]]
    out[(a == 0) | (b == 0)] = 0
    return out


def matmul(a, b, exp, log, qm1):
    """Matrix product over the field; a is (m, p), b is (p, n)."""
    m, p = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), dtype=np.uint16)
    for k in range(p):
        col = a[:, k]
        nz = col != 0
        if not nz.any():
            continue
        row = b[k, :]
        prod = exp[log[col][:, None] + log[row][None, :]].astype(np.uint16)
        prod[~nz, :] = 0
        prod[:, row == 0] = 0
        out ^= prod
    return out


def rank(m, exp, log, qm1):
    """Rank via forward elimination.  Destroys m (pass a copy)."""
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        piv = m[r, c]
        linv = (qm1 - log[piv]) % qm1
        below = m[r + 1 :, c]
        hit = np.nonzero(below)[0]
        if hit.size:
            # row_i ^= (row_i[c] / piv) * pivot_row, for rows below with a
            # nonzero in column c
            lfac = (log[below[hit]] + linv) % qm1
            pivseg = m[r, c:]
            prod = exp[log[pivseg][None, :] + lfac[:, None]].astype(np.uint16)
            prod[:, pivseg == 0] = 0
            m[r + 1 + hit, c:] ^= prod
        r += 1
    return r


def rref(m, exp, log, qm1):
    """Reduced row echelon form in place; returns (rank, pivot_columns)."""
    rows, cols = m.shape
    piv_cols = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        linv = (qm1 - log[m[r, c]]) % qm1
        row = m[r, c:]
        scaled = exp[log[row] + linv].astype(np.uint16)
        scaled[row == 0] = 0
        m[r, c:] = scaled
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            lfac = log[m[others, c]]
            seg = m[np.ix_(others, range(c, cols))]
            prod = exp[log[m[r, c:]][None, :] + lfac[:, None]].astype(np.uint16)
            prod[:, m[r, c:] == 0] = 0
            m[np.ix_(others, range(c, cols))] = seg ^ prod
        piv_cols[r] = c
        r += 1
    return r, piv_cols[:r]


def scan_patterns(h, patterns, alpha, exp, log, qm1):
    """Recoverability of node-erasure patterns against a parity-check matrix.

    h is the ((n-k)*alpha, n*alpha) check matrix with node i occupying columns
    [i*alpha, (i+1)*alpha).  patterns is (num, s) of node ids.  Returns a uint8
    array: 1 where the pattern is recoverable (erased columns independent).
    """
    num, s = patterns.shape
    out = np.zeros(num, dtype=np.uint8)
    want = s * alpha
    for i in range(num):
        cols = (patterns[i][:, None] * alpha + np.arange(alpha)[None, :]).ravel()
        sub = np.ascontiguousarray(h[:, cols].T)
        out[i] = 1 if rank(sub, exp, log, qm1) == want else 0
    return out
