"""Exact arithmetic and dense linear algebra over GF(2^w), 1 <= w <= 16.

Field elements are plain ints (bitmask polynomial coefficients); matrices are
row-major numpy uint16 arrays.  Multiplication runs on exp/log tables built
from a searched generator (the polynomial ``x`` is not primitive for every
reduction polynomial, e.g. 0x11B), so tables work for any irreducible poly.

Everything here is immutable after construction and side-effect free: hot
paths dispatch to the selected kernel backend (see backend.py).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import backend as _backend

DEFAULT_POLY = {8: 0x11B, 16: 0x1100B}


class NoSolution(Exception):
    """Raised by solve() when the linear system is inconsistent."""


def _poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm and a:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def is_irreducible(poly: int, w: int) -> bool:
    """Exhaustive trial division by every polynomial of degree 1..w//2."""
    if poly.bit_length() - 1 != w:
        return False
    for d in range(1, w // 2 + 1):
        for cand in range(1 << d, 1 << (d + 1)):
            if _poly_mod(poly, cand) == 0:
                return False
    return True


def default_poly(w: int) -> int:
    """Default reduction polynomial: fixed for w=8,16, else smallest irreducible."""
    if w in DEFAULT_POLY:
        return DEFAULT_POLY[w]
    for cand in range((1 << w) + 1, 1 << (w + 1)):
        if is_irreducible(cand, w):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {w}")  # unreachable


def _mul_slow(a: int, b: int, poly: int, w: int) -> int:
    """Carry-less multiply followed by long division; table-free reference."""
    acc = 0
    shift = 0
    while b:
        if b & 1:
            acc ^= a << shift
        b >>= 1
        shift += 1
    return _poly_mod(acc, poly)


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^w) with a verified irreducible reduction polynomial and log tables."""

    w: int
    poly: int
    exp: np.ndarray = field(repr=False, compare=False)
    log: np.ndarray = field(repr=False, compare=False)
    generator: int = field(compare=False)

    @property
    def q(self) -> int:
        return 1 << self.w

    @property
    def qm1(self) -> int:
        return (1 << self.w) - 1


@lru_cache(maxsize=None)
def field(w: int, poly: int | None = None) -> FieldSpec:
    """Construct (and cache) a field; verifies irreducibility exhaustively."""
    if not 1 <= w <= 16:
        raise ValueError(f"field width w={w} out of supported range [1, 16]")
    if poly is None:
        poly = default_poly(w)
    if not is_irreducible(poly, w):
        raise ValueError(f"0x{poly:x} is not irreducible of degree {w}")
    q = 1 << w
    qm1 = q - 1
    gen = 1
    for cand in range(2, q):
        x, order = cand, 1
        while x != 1:
            x = _mul_slow(x, cand, poly, w)
            order += 1
        if order == qm1:
            gen = cand
            break
    exp = np.zeros(max(2 * qm1, 2), dtype=np.uint16)
    log = np.zeros(q, dtype=np.int64)
    x = 1
    for i in range(qm1):
        exp[i] = x
        log[x] = i
        x = _mul_slow(x, gen, poly, w)
    for i in range(qm1, exp.shape[0]):
        exp[i] = exp[i - qm1] if qm1 > 1 else 1
    return FieldSpec(w=w, poly=poly, exp=exp, log=log, generator=gen)


def field_from_size(q: int, poly: int | None = None) -> FieldSpec:
    w = q.bit_length() - 1
    if q != 1 << w:
        raise ValueError(f"field size {q} is not a power of two")
    return field(w, poly)


# ---------------------------------------------------------------------------
# element operations
# ---------------------------------------------------------------------------

def gf_mul(a: int, b: int, fs: FieldSpec) -> int:
    if a == 0 or b == 0:
        return 0
    return int(fs.exp[fs.log[a] + fs.log[b]])


def gf_inv(a: int, fs: FieldSpec) -> int:
    if a == 0:
        raise ZeroDivisionError("zero has no multiplicative inverse")
    return int(fs.exp[fs.qm1 - fs.log[a]])


# ---------------------------------------------------------------------------
# matrix operations (numpy uint16 arrays)
# ---------------------------------------------------------------------------

def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.uint16)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint16)


def matmul(a: np.ndarray, b: np.ndarray, fs: FieldSpec) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    return _backend.active.matmul(
        np.ascontiguousarray(a, dtype=np.uint16),
        np.ascontiguousarray(b, dtype=np.uint16),
        fs.exp, fs.log, fs.qm1,
    )


def scale(m: np.ndarray, c: int, fs: FieldSpec) -> np.ndarray:
    """Scalar multiple of a matrix."""
    if c == 0:
        return np.zeros_like(m)
    out = fs.exp[fs.log[m] + fs.log[c]].astype(np.uint16)
    out[m == 0] = 0
    return out


def rank(m: np.ndarray, fs: FieldSpec) -> int:
    if m.size == 0:
        return 0
    work = np.ascontiguousarray(m, dtype=np.uint16).copy()
    return int(_backend.active.rank(work, fs.exp, fs.log, fs.qm1))


def rref(m: np.ndarray, fs: FieldSpec) -> tuple[np.ndarray, int, np.ndarray]:
    """Reduced row echelon form; returns (R, rank, pivot_columns)."""
    work = np.ascontiguousarray(m, dtype=np.uint16).copy()
    if work.size == 0:
        return work, 0, np.empty(0, dtype=np.int64)
    r, piv = _backend.active.rref(work, fs.exp, fs.log, fs.qm1)
    return work, int(r), np.asarray(piv, dtype=np.int64)


def solve(a: np.ndarray, b: np.ndarray, fs: FieldSpec) -> np.ndarray:
    """Solve a @ x = b; free variables are set to zero (deterministic).

    Raises NoSolution for inconsistent systems.  b may be a vector or matrix.
    """
    vec = b.ndim == 1
    bm = b[:, None] if vec else b
    if a.shape[0] != bm.shape[0]:
        raise ValueError(f"row mismatch {a.shape} vs {bm.shape}")
    aug = np.hstack([a, bm]).astype(np.uint16)
    red, r, piv = rref(aug, fs)
    ncols = a.shape[1]
    if any(p >= ncols for p in piv):
        raise NoSolution("inconsistent linear system")
    x = zeros(ncols, bm.shape[1])
    for i, c in enumerate(piv):
        x[c, :] = red[i, ncols:]
    return x[:, 0] if vec else x


def inverse(m: np.ndarray, fs: FieldSpec) -> np.ndarray:
    n = m.shape[0]
    if m.shape[1] != n:
        raise ValueError("inverse of non-square matrix")
    try:
        x = solve(m, eye(n), fs)
    except NoSolution as exc:  # cannot happen for square a with full row rank
        raise ValueError("singular matrix") from exc
    if rank(m, fs) != n:
        raise ValueError("singular matrix")
    return x


def null_space(m: np.ndarray, fs: FieldSpec) -> np.ndarray:
    """Basis (rows) of {x : m @ x = 0}; shape (cols - rank, cols)."""
    red, r, piv = rref(m, fs)
    cols = m.shape[1]
    pivset = set(int(p) for p in piv)
    free = [c for c in range(cols) if c not in pivset]
    basis = zeros(len(free), cols)
    for bi, f in enumerate(free):
        basis[bi, f] = 1
        for i, p in enumerate(piv):
            basis[bi, p] = red[i, f]  # char 2: no sign flip
    return basis


# ---------------------------------------------------------------------------
# serialization: {rows, cols, w, poly_hex, entries_hex} with bit-exact round trip
# ---------------------------------------------------------------------------

def matrix_to_json(m: np.ndarray, fs: FieldSpec) -> dict:
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "w": fs.w,
        "poly_hex": f"0x{fs.poly:x}",
        "entries_hex": [f"{int(v):x}" for v in m.ravel()],
    }


def matrix_from_json(obj: dict) -> tuple[np.ndarray, FieldSpec]:
    fs = field(int(obj["w"]), int(obj["poly_hex"], 16))
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = obj["entries_hex"]
    if len(entries) != rows * cols:
        raise ValueError("entries_hex length does not match rows*cols")
    m = np.array([int(e, 16) for e in entries], dtype=np.uint16).reshape(rows, cols)
    if m.size and int(m.max()) >= fs.q:
        raise ValueError("entry out of field range")
    return m, fs


def dumps_matrix(m: np.ndarray, fs: FieldSpec) -> str:
    return json.dumps(matrix_to_json(m, fs), sort_keys=True)
