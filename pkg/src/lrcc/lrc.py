"""Optimal-distance locally repairable codes built by parity splitting.

A (k, g, r, delta)-code stores k information symbols in mu = k/r disjoint
local groups of r symbols, gives each group delta local parities (functions of
that group only), and adds g global parities covering every information
symbol.  The construction takes a Cauchy parity block of k + g + delta
distinct points, splits its first delta rows per group, keeps the remaining g
rows global, and then *proves* the resulting minimum node distance
d = g + delta + 1 by exhaustive erasure enumeration (resampling points until
verification passes).

Node layout (column order of the generator): information nodes 1..k, local
parities 1..mu*delta (group-major), global parities 1..g.  Each node owns
alpha consecutive columns; alpha > 1 replicates the scalar layout per
sub-symbol (block-diagonal), which leaves the node distance unchanged.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field as dc_field
from enum import Enum

import numpy as np

from . import galois
from .galois import FieldSpec

DEFAULT_PATTERN_BUDGET = 2_000_000
MAX_CONSTRUCT_ATTEMPTS = 32
_SCAN_CHUNK = 65536


class InvalidParams(ValueError):
    """Parameter combination violates the code-family constraints."""


class Unrecoverable(Exception):
    """Erasure pattern exceeds the code's correction capability."""


class BudgetExceeded(Exception):
    """Exhaustive enumeration would exceed the configured pattern budget."""


class ConstructionFailed(Exception):
    """No sampled instance passed distance verification within the budget."""


class NodeKind(str, Enum):
    INFORMATION = "info"
    LOCAL_PARITY = "local"
    GLOBAL_PARITY = "global"


@dataclass(frozen=True, order=True)
class NodeIndex:
    """A node identified by kind and 1-based index within its kind."""

    kind: NodeKind
    index: int

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.index}"

    @staticmethod
    def parse(text: str) -> "NodeIndex":
        kind, _, idx = text.partition(":")
        return NodeIndex(NodeKind(kind), int(idx))


@dataclass(frozen=True)
class LrcParams:
    k: int
    g: int
    r: int
    delta: int
    alpha: int = 1

    def __post_init__(self):
        if self.k < 1 or self.g < 0 or self.delta < 1 or self.alpha < 1:
            raise InvalidParams(f"out-of-range parameters {self}")
        if self.r < 1 or self.k % self.r != 0:
            raise InvalidParams(f"r must divide k (k={self.k}, r={self.r})")

    @property
    def mu(self) -> int:
        return self.k // self.r

    @property
    def n(self) -> int:
        return self.k + self.mu * self.delta + self.g

    def to_json(self) -> dict:
        return {"k": self.k, "g": self.g, "r": self.r,
                "delta": self.delta, "alpha": self.alpha}

    @staticmethod
    def from_json(obj: dict) -> "LrcParams":
        return LrcParams(int(obj["k"]), int(obj["g"]), int(obj["r"]),
                         int(obj["delta"]), int(obj.get("alpha", 1)))


def node_list(params: LrcParams) -> list[NodeIndex]:
    """All nodes in column-layout order."""
    nodes = [NodeIndex(NodeKind.INFORMATION, j + 1) for j in range(params.k)]
    nodes += [NodeIndex(NodeKind.LOCAL_PARITY, a + 1)
              for a in range(params.mu * params.delta)]
    nodes += [NodeIndex(NodeKind.GLOBAL_PARITY, i + 1) for i in range(params.g)]
    return nodes


def node_position(params: LrcParams, node: NodeIndex) -> int:
    """0-based position of a node in the column layout."""
    if node.kind is NodeKind.INFORMATION:
        if not 1 <= node.index <= params.k:
            raise InvalidParams(f"no such node {node}")
        return node.index - 1
    if node.kind is NodeKind.LOCAL_PARITY:
        if not 1 <= node.index <= params.mu * params.delta:
            raise InvalidParams(f"no such node {node}")
        return params.k + node.index - 1
    if not 1 <= node.index <= params.g:
        raise InvalidParams(f"no such node {node}")
    return params.k + params.mu * params.delta + node.index - 1


def node_group(params: LrcParams, node: NodeIndex) -> int | None:
    """1-based local-group index; None for global parities."""
    if node.kind is NodeKind.INFORMATION:
        return (node.index - 1) // params.r + 1
    if node.kind is NodeKind.LOCAL_PARITY:
        return (node.index - 1) // params.delta + 1
    return None


def node_columns(params: LrcParams, node: NodeIndex) -> range:
    pos = node_position(params, node)
    return range(pos * params.alpha, (pos + 1) * params.alpha)


@dataclass
class DistanceReport:
    d: int
    witness_pattern: tuple[NodeIndex, ...]
    patterns_checked: int

    def to_json(self) -> dict:
        return {"d": self.d,
                "witness": [str(x) for x in self.witness_pattern],
                "patterns_checked": self.patterns_checked}


@dataclass
class LrcCode:
    """A concrete code: generator matrix plus layout metadata.

    ``generator`` has shape (k*alpha, n*alpha); message row-vectors multiply
    on the left.  ``distance`` stays None until verify_distance runs.
    """

    params: LrcParams
    field: FieldSpec
    generator: np.ndarray
    distance: int | None = None
    witness: tuple[NodeIndex, ...] = ()
    _check: np.ndarray | None = dc_field(default=None, repr=False)

    @property
    def nodes(self) -> list[NodeIndex]:
        return node_list(self.params)

    def columns(self, node: NodeIndex) -> range:
        return node_columns(self.params, node)

    def node_column_map(self) -> dict[str, list[int]]:
        return {str(nd): list(self.columns(nd)) for nd in self.nodes}

    def check_matrix(self) -> np.ndarray:
        """Parity-check matrix (null-space basis of the generator), cached."""
        if self._check is None:
            self._check = galois.null_space(self.generator, self.field)
        return self._check

    def to_json(self) -> dict:
        obj = {
            "params": self.params.to_json(),
            "field": {"w": self.field.w, "poly_hex": f"0x{self.field.poly:x}"},
            "generator": galois.matrix_to_json(self.generator, self.field),
            "node_columns": self.node_column_map(),
        }
        if self.distance is not None:
            obj["distance"] = self.distance
            obj["witness"] = [str(x) for x in self.witness]
        return obj

    @staticmethod
    def from_json(obj: dict) -> "LrcCode":
        params = LrcParams.from_json(obj["params"])
        gen, fs = galois.matrix_from_json(obj["generator"])
        fobj = obj.get("field", {})
        if fobj and (int(fobj.get("w", fs.w)) != fs.w
                     or int(fobj.get("poly_hex", hex(fs.poly)), 16) != fs.poly):
            raise InvalidParams("field header disagrees with the generator matrix")
        code = LrcCode(params=params, field=fs, generator=gen)
        if "distance" in obj:
            code.distance = int(obj["distance"])
            code.witness = tuple(NodeIndex.parse(s) for s in obj.get("witness", []))
        expect = code.node_column_map()
        got = {k: list(map(int, v)) for k, v in obj["node_columns"].items()}
        if got != expect:
            raise InvalidParams("node_columns does not match the declared layout")
        return code


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _scalar_generator(params: LrcParams, fs: FieldSpec, rng) -> np.ndarray:
    k, g, r, delta, mu = params.k, params.g, params.r, params.delta, params.mu
    pts = rng.permutation(fs.q)[: k + g + delta]
    ys = pts[:k]
    xs = pts[k:]
    cauchy = galois.zeros(delta + g, k)
    for s in range(delta + g):
        for j in range(k):
            cauchy[s, j] = galois.gf_inv(int(xs[s]) ^ int(ys[j]), fs)
    gen = galois.zeros(k, params.n)
    gen[:, :k] = galois.eye(k)
    for tau in range(mu):
        for s in range(delta):
            col = k + tau * delta + s
            for j in range(tau * r, (tau + 1) * r):
                gen[j, col] = cauchy[s, j]
    for i in range(g):
        gen[:, k + mu * delta + i] = cauchy[delta + i, :]
    return gen


def expand_alpha(scalar_gen: np.ndarray, alpha: int) -> np.ndarray:
    """Replicate a scalar generator across alpha independent sub-symbols."""
    if alpha == 1:
        return scalar_gen
    return np.kron(scalar_gen, np.eye(alpha, dtype=np.uint16))


def construct_pyramid(params: LrcParams, fs: FieldSpec, seed: int,
                      budget: int = DEFAULT_PATTERN_BUDGET) -> LrcCode:
    """Build a code of the family and verify d = g + delta + 1 exhaustively.

    Evaluation points are resampled (seed, attempt) until verification passes,
    up to MAX_CONSTRUCT_ATTEMPTS.
    """
    if fs.q <= params.k + params.g + params.delta:
        raise InvalidParams(
            f"field of size {fs.q} too small for k+g+delta = "
            f"{params.k + params.g + params.delta} distinct points")
    target = params.g + params.delta + 1
    for attempt in range(MAX_CONSTRUCT_ATTEMPTS):
        rng = np.random.default_rng((seed, attempt))
        scalar = _scalar_generator(params, fs, rng)
        code = LrcCode(params=params, field=fs,
                       generator=expand_alpha(scalar, params.alpha))
        report = verify_distance(code, budget=budget)
        if report.d == target:
            return code
    raise ConstructionFailed(
        f"no instance with d={target} found in {MAX_CONSTRUCT_ATTEMPTS} attempts")


# ---------------------------------------------------------------------------
# encode / decode
# ---------------------------------------------------------------------------

def encode(code: LrcCode, message: np.ndarray) -> np.ndarray:
    msg = np.asarray(message, dtype=np.uint16)
    klen = code.params.k * code.params.alpha
    if msg.shape != (klen,):
        raise ValueError(f"message length {msg.shape} != k*alpha = {klen}")
    return galois.matmul(msg[None, :], code.generator, code.field)[0]


def decode_erasures(code: LrcCode, received: np.ndarray,
                    erased: set[NodeIndex] | frozenset[NodeIndex]) -> np.ndarray:
    """Recover the message from surviving nodes; raises Unrecoverable.

    ``received`` is a full-length codeword array whose entries at erased
    node columns are ignored.
    """
    params = code.params
    rec = np.asarray(received, dtype=np.uint16)
    if rec.shape != (params.n * params.alpha,):
        raise ValueError(f"received length {rec.shape} != n*alpha")
    erased_cols = set()
    for nd in erased:
        erased_cols.update(code.columns(nd))
    surv = [c for c in range(params.n * params.alpha) if c not in erased_cols]
    gs = code.generator[:, surv]
    klen = params.k * params.alpha
    if galois.rank(gs, code.field) < klen:
        raise Unrecoverable(f"erasure pattern {sorted(map(str, erased))}")
    return galois.solve(gs.T, rec[surv], code.field)


# ---------------------------------------------------------------------------
# distance verification by exhaustive node-erasure enumeration
# ---------------------------------------------------------------------------

def _pattern_chunks(n: int, s: int):
    """Yield lexicographic C(n, s) node patterns as int64 arrays, chunked."""
    it = itertools.combinations(range(n), s)
    while True:
        chunk = list(itertools.islice(it, _SCAN_CHUNK))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int64)


def scan_erasure_patterns(code: LrcCode, patterns: np.ndarray) -> np.ndarray:
    """1 where the node pattern is recoverable, 0 where it is not."""
    from .backend import active as kern
    h = code.check_matrix()
    return kern.scan_patterns(np.ascontiguousarray(h), patterns,
                              code.params.alpha, code.field.exp,
                              code.field.log, code.field.qm1)


def verify_distance(code: LrcCode, budget: int = DEFAULT_PATTERN_BUDGET) -> DistanceReport:
    """Smallest unrecoverable node-erasure pattern, scanning sizes upward.

    Sets code.distance/code.witness.  The witness is the lexicographically
    first pattern of the failing size under the column layout order.
    """
    params = code.params
    n = params.n
    bound = params.g + params.delta + 1
    if math.comb(n, min(bound, n)) > budget:
        raise BudgetExceeded(
            f"C({n},{bound}) = {math.comb(n, min(bound, n))} exceeds budget {budget}")
    nodes = code.nodes
    klen = params.k * params.alpha
    checked = 0
    if galois.rank(code.generator, code.field) < klen:
        # degenerate generator: even the empty erasure is ambiguous, so the
        # first enumerated pattern is a witness
        code.distance = 1
        code.witness = (nodes[0],)
        return DistanceReport(1, code.witness, checked)
    for s in range(1, n + 1):
        checked += math.comb(n, s)
        if checked > budget:
            raise BudgetExceeded(f"pattern budget {budget} exceeded at size {s}")
        for pats in _pattern_chunks(n, s):
            ok = scan_erasure_patterns(code, pats)
            bad = np.nonzero(ok == 0)[0]
            if bad.size:
                witness = tuple(nodes[j] for j in pats[bad[0]])
                code.distance = s
                code.witness = witness
                return DistanceReport(s, witness, checked)
    raise AssertionError("no unrecoverable pattern up to full erasure")  # pragma: no cover


# ---------------------------------------------------------------------------
# locality structure
# ---------------------------------------------------------------------------

def locality_sets(code: LrcCode) -> dict[int, set[NodeIndex]]:
    """Group index -> its r + delta nodes; verifies repair within each set.

    Each set must tolerate any delta node erasures using only the set itself
    (punctured distance >= delta + 1), checked by enumeration within the set.
    """
    params = code.params
    sets: dict[int, set[NodeIndex]] = {}
    for tau in range(1, params.mu + 1):
        info = {NodeIndex(NodeKind.INFORMATION, j)
                for j in range((tau - 1) * params.r + 1, tau * params.r + 1)}
        locals_ = {NodeIndex(NodeKind.LOCAL_PARITY, a)
                   for a in range((tau - 1) * params.delta + 1,
                                  tau * params.delta + 1)}
        sets[tau] = info | locals_
    fs = code.field
    for tau, members in sets.items():
        ordered = sorted(members, key=lambda nd: node_position(params, nd))
        cols = [c for nd in ordered for c in code.columns(nd)]
        sub = code.generator[:, cols]
        base = galois.rank(sub, fs)
        for erased in itertools.combinations(range(len(ordered)), params.delta):
            keep = [c for i, nd in enumerate(ordered) if i not in erased
                    for c in code.columns(nd)]
            if galois.rank(code.generator[:, keep], fs) < base:
                raise AssertionError(
                    f"group {tau} cannot repair {[str(ordered[i]) for i in erased]}")
    return sets


def save_code(code: LrcCode, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(code.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_code(path: str) -> LrcCode:
    with open(path) as fh:
        return LrcCode.from_json(json.load(fh))
