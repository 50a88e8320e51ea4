"""Entropy of linear views of a uniform message vector, computed as rank.

For linear functions of independent uniform field symbols, joint entropy in
log-q units equals the rank of the stacked coefficient matrix, which makes an
exact oracle: no floating point, no estimation.  Views must be linear; that
is the whole deal.

The check_* functions verify structural facts of the constructed codes
(total entropy, per-group conditional uniformity, global-parity support,
erasure-pattern determinism) and two general inequalities over randomized
linear instances (a conditional-mutual-information bound and a min-subset
entropy bound).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import galois
from .galois import FieldSpec
from .lrc import (BudgetExceeded, LrcCode, NodeIndex, NodeKind, node_group,
                  node_list)


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class LinearView:
    """Observed symbols as linear functionals (rows) of the full message."""

    matrix: np.ndarray
    label: str = ""

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]


def stack_views(views) -> np.ndarray:
    views = list(views)
    if not views:
        return np.zeros((0, 0), dtype=np.uint16)
    dim = views[0].dim
    for v in views:
        if v.dim != dim:
            raise DimensionMismatch(
                f"view {v.label!r} has {v.dim} columns, expected {dim}")
    return np.vstack([v.matrix for v in views]).astype(np.uint16)


def entropy(views, fs: FieldSpec) -> int:
    """Joint entropy of a set of linear views, in field symbols."""
    m = stack_views(views)
    if m.size == 0:
        return 0
    return galois.rank(m, fs)


def entropy_per_alpha(views, fs: FieldSpec, alpha: int) -> Fraction:
    return Fraction(entropy(views, fs), alpha)


def conditional_entropy(a, b, fs: FieldSpec) -> int:
    """H(a | b) = rank([a; b]) - rank(b)."""
    a, b = list(a), list(b)
    return entropy(a + b, fs) - entropy(b, fs)


def mutual_information(a, b, given, fs: FieldSpec) -> int:
    """I(a; b | given) via conditional entropies."""
    a, b, given = list(a), list(b), list(given)
    return (conditional_entropy(a, given, fs) + conditional_entropy(b, given, fs)
            - conditional_entropy(a + b, given, fs))


def node_view(code: LrcCode, node: NodeIndex) -> LinearView:
    """The alpha functionals a node stores, as rows over the message space."""
    cols = list(code.columns(node))
    return LinearView(code.generator[:, cols].T.copy(), str(node))


def node_views(code: LrcCode, nodes) -> list[LinearView]:
    return [node_view(code, nd) for nd in nodes]


@dataclass
class CheckResult:
    name: str
    ok: bool
    witness: str | None = None
    details: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        obj = {"check": self.name, "result": "PASS" if self.ok else "FAIL"}
        if self.witness:
            obj["witness"] = self.witness
        obj.update(self.details)
        return obj


# ---------------------------------------------------------------------------
# structural checks on a constructed code
# ---------------------------------------------------------------------------

def check_total_entropy(code: LrcCode) -> CheckResult:
    """Joint entropy of every node equals k*alpha."""
    views = node_views(code, code.nodes)
    h = entropy(views, code.field)
    want = code.params.k * code.params.alpha
    per_alpha = entropy_per_alpha(views, code.field, code.params.alpha)
    return CheckResult("total-entropy", h == want,
                       None if h == want else f"H(all nodes) = {h} != {want}",
                       {"entropy": h, "expected": want,
                        "entropy_per_alpha": str(per_alpha)})


def check_group_uniformity(code: LrcCode, budget: int = 200_000) -> CheckResult:
    """Per group: any <= r nodes among {group, globals} are conditionally
    uniform and independent given the information nodes outside the group."""
    params = code.params
    fs = code.field
    alpha = params.alpha
    nodes = node_list(params)
    globals_ = [nd for nd in nodes if nd.kind is NodeKind.GLOBAL_PARITY]
    count = 0
    for tau in range(1, params.mu + 1):
        grp_info = [nd for nd in nodes if nd.kind is NodeKind.INFORMATION
                    and node_group(params, nd) == tau]
        grp_loc = [nd for nd in nodes if nd.kind is NodeKind.LOCAL_PARITY
                   and node_group(params, nd) == tau]
        outside = [nd for nd in nodes if nd.kind is NodeKind.INFORMATION
                   and node_group(params, nd) != tau]
        cond = node_views(code, outside)
        base = entropy(cond, fs)
        for na in range(len(globals_) + 1):
            for nb in range(len(grp_loc) + 1):
                for nd_ in range(len(grp_info) + 1):
                    if na + nb + nd_ > params.r:
                        continue
                    for a_set in itertools.combinations(globals_, na):
                        for b_set in itertools.combinations(grp_loc, nb):
                            for d_set in itertools.combinations(grp_info, nd_):
                                count += 1
                                if count > budget:
                                    raise BudgetExceeded(
                                        f"subset budget {budget} exceeded")
                                picked = list(a_set + b_set + d_set)
                                h = entropy(node_views(code, picked) + cond, fs) - base
                                want = len(picked) * alpha
                                if h != want:
                                    return CheckResult(
                                        "group-uniformity", False,
                                        f"group {tau}: H({[str(x) for x in picked]} | "
                                        f"outside info) = {h} != {want}",
                                        {"subsets_checked": count})
    return CheckResult("group-uniformity", True, None, {"subsets_checked": count})


def check_global_parity_support(code: LrcCode) -> CheckResult:
    """Every global parity depends on every information node (nonzero block)."""
    params = code.params
    alpha = params.alpha
    for i in range(1, params.g + 1):
        gp = NodeIndex(NodeKind.GLOBAL_PARITY, i)
        cols = list(code.columns(gp))
        for j in range(1, params.k + 1):
            block = code.generator[(j - 1) * alpha: j * alpha, cols]
            if not block.any():
                return CheckResult("global-parity-support", False,
                                   f"{gp} has zero support on info:{j}")
    return CheckResult("global-parity-support", True)


def check_erasure_entropy(code: LrcCode, budget: int = 500_000) -> CheckResult:
    """Any <= g + delta nodes are determined by the rest (zero conditional
    entropy); the rank-based counterpart of the verified minimum distance."""
    params = code.params
    fs = code.field
    nodes = node_list(params)
    views = node_views(code, nodes)
    n = params.n
    klen = params.k * params.alpha
    limit = params.g + params.delta
    count = 0
    for s in range(0, limit + 1):
        for pat in itertools.combinations(range(n), s):
            count += 1
            if count > budget:
                raise BudgetExceeded(f"pattern budget {budget} exceeded")
            comp = [views[i] for i in range(n) if i not in pat]
            # H(pattern | complement) = k*alpha - rank(complement)
            h = klen - entropy(comp, fs)
            if h != 0:
                return CheckResult(
                    "erasure-entropy", False,
                    f"pattern {[str(nodes[i]) for i in pat]} has residual entropy {h}",
                    {"patterns_checked": count})
    return CheckResult("erasure-entropy", True, None, {"patterns_checked": count})


# ---------------------------------------------------------------------------
# randomized inequality checks on small linear instances
# ---------------------------------------------------------------------------

class HypothesisUnsatisfied(Exception):
    """Sampled instance does not meet an inequality's side condition."""


def _random_matrix(rng, rows, dim, fs, support=None):
    m = galois.zeros(rows, dim)
    if rows == 0:
        return m
    cols = list(range(dim)) if support is None else list(support)
    if cols:
        m[:, cols] = rng.integers(0, fs.q, size=(rows, len(cols)), dtype=np.uint16)
    return m


def _cond_independent(view_mats, cond_mat, fs) -> bool:
    """Rank additivity of the views given the conditioning view."""
    base = galois.rank(cond_mat, fs) if cond_mat.size else 0
    joint = galois.rank(np.vstack([*view_mats, cond_mat]), fs) - base
    total = 0
    for m in view_mats:
        total += galois.rank(np.vstack([m, cond_mat]), fs) - base
    return joint == total


def _sample_mi_instance(rng, fs):
    """Random views with disjoint A/B/D index sets, A' in A, B' in B, and the
    leftover views made conditionally independent given the conditioned view
    by giving each one a private coordinate block."""
    nvars = int(rng.integers(3, 7))
    idx = list(range(nvars))
    rng.shuffle(idx)
    na = int(rng.integers(1, nvars - 1))
    nb = int(rng.integers(1, nvars - na))
    a_idx, b_idx = idx[:na], idx[na:na + nb]
    d_idx = idx[na + nb: na + nb + int(rng.integers(0, nvars - na - nb + 1))]
    a_prime = [i for i in a_idx if rng.random() < 0.5]
    b_prime = [i for i in b_idx if rng.random() < 0.5]
    loose = set(a_prime) | set(b_prime)
    strict = [i for i in a_idx + b_idx if i not in loose]

    # coordinate budget: one private segment per strict view plus a shared pool
    seg = 2
    dim = seg * (len(strict) + 2)
    pool = list(range(seg * len(strict), dim))
    z = {}
    for i in d_idx:
        z[i] = _random_matrix(rng, int(rng.integers(1, 3)), dim, fs, support=pool)
    f_d = [LinearView(galois.matmul(
        _random_matrix(rng, int(rng.integers(0, 3)), z[i].shape[0], fs),
        z[i], fs), f"fD{i}") for i in d_idx]
    d_stack = stack_views(f_d) if f_d else np.zeros((0, dim), dtype=np.uint16)
    structured = rng.random() < 0.7
    for s_pos, i in enumerate(strict):
        if not structured:
            # loose draw on a shared narrow support: collides often enough to
            # exercise the rejection path, passes occasionally
            z[i] = _random_matrix(rng, int(rng.integers(1, 3)), dim, fs,
                                  support=range(min(2, dim)))
            continue
        private = _random_matrix(rng, int(rng.integers(1, 3)), dim, fs,
                                 support=range(s_pos * seg, (s_pos + 1) * seg))
        if d_stack.shape[0]:
            mixin = galois.matmul(
                _random_matrix(rng, private.shape[0], d_stack.shape[0], fs),
                d_stack, fs)
            private = private ^ mixin  # known given the conditioned view
        z[i] = private
    for i in loose:
        z[i] = _random_matrix(rng, int(rng.integers(1, 3)), dim, fs)

    def apply_f(i):
        f = _random_matrix(rng, int(rng.integers(1, 3)), z[i].shape[0], fs)
        return LinearView(galois.matmul(f, z[i], fs), f"f{i}")

    f_of = {i: apply_f(i) for i in a_idx + b_idx}
    return {
        "z": z, "f_d": f_d, "f_of": f_of, "dim": dim,
        "a": a_idx, "b": b_idx, "d": d_idx,
        "a_prime": a_prime, "b_prime": b_prime, "strict": strict,
    }


def check_mi_bound(trials: int, seed: int, fs: FieldSpec | None = None) -> CheckResult:
    """I(f_A; f_B | f_D) <= H(f_A' | f_D) + H(f_B' | f_D) whenever the views
    outside A' and B' are conditionally independent given the conditioned
    view.  The side condition is always verified by rank additivity, never
    assumed; instances that fail it are resampled."""
    fs = fs or galois.field(4)
    rng = np.random.default_rng(seed)
    resampled = 0
    for t in range(trials):
        for _ in range(64):
            inst = _sample_mi_instance(rng, fs)
            d_stack = (stack_views(inst["f_d"]) if inst["f_d"]
                       else np.zeros((0, inst["dim"]), dtype=np.uint16))
            strict_mats = [inst["z"][i] for i in inst["strict"]]
            if not strict_mats or _cond_independent(strict_mats, d_stack, fs):
                break
            resampled += 1
        else:
            raise HypothesisUnsatisfied(
                f"no instance satisfying the side condition at trial {t}")
        f_a = [inst["f_of"][i] for i in inst["a"]]
        f_b = [inst["f_of"][i] for i in inst["b"]]
        f_d = inst["f_d"]
        lhs = mutual_information(f_a, f_b, f_d, fs)
        rhs = (conditional_entropy([inst["f_of"][i] for i in inst["a_prime"]], f_d, fs)
               + conditional_entropy([inst["f_of"][i] for i in inst["b_prime"]], f_d, fs))
        if lhs > rhs:
            return CheckResult("mi-bound", False,
                               f"trial {t}: I = {lhs} > {rhs}",
                               {"trials": t + 1})
    return CheckResult("mi-bound", True, None,
                       {"trials": trials, "resampled": resampled})


def check_subset_entropy_bound(trials: int, seed: int,
                               fs: FieldSpec | None = None) -> CheckResult:
    """min over size-a subsets of H(f_A) <= (a/b) * sum H(f_i), and with
    independent sources, <= (a/b) * H(f_[b]).  Exhaustive subset minimum."""
    fs = fs or galois.field(4)
    rng = np.random.default_rng(seed)
    for t in range(trials):
        b = int(rng.integers(2, 7))
        a = int(rng.integers(1, b + 1))
        for independent in (False, True):
            seg = 2
            dim = seg * b if independent else int(rng.integers(2, 9))
            views = []
            for i in range(b):
                support = range(i * seg, (i + 1) * seg) if independent else None
                z = _random_matrix(rng, int(rng.integers(1, 3)), dim, fs, support)
                f = _random_matrix(rng, int(rng.integers(1, 3)), z.shape[0], fs)
                views.append(LinearView(galois.matmul(f, z, fs), f"f{i}"))
            best = min(entropy(sub, fs)
                       for sub in itertools.combinations(views, a))
            if independent:
                rhs = Fraction(a, b) * entropy(views, fs)
            else:
                rhs = Fraction(a, b) * sum(entropy([v], fs) for v in views)
            if Fraction(best) > rhs:
                return CheckResult(
                    "min-subset-entropy", False,
                    f"trial {t}: min H = {best} > {rhs} "
                    f"(a={a}, b={b}, independent={independent})",
                    {"trials": t + 1})
    return CheckResult("min-subset-entropy", True, None, {"trials": trials})
