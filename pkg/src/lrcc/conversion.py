"""Stable global-merge conversions between locally repairable codes.

lam initial codewords of a (kI, gI, r, delta) code are merged into one
codeword of a (lam*kI, gF, r, delta) code.  Information and local-parity
nodes carry over unchanged (the merge preserves groups), every initial global
parity retires, and the gF final global parities are the only new nodes; the
conversion coordinator downloads linear functions of stored node symbols and
synthesizes the new nodes from the downloads alone.

Bandwidth accounting is exact: gamma_R counts every downloaded symbol,
gamma_W is fixed at gF*alpha for a stable merge, and each executed procedure
is checked bit-for-bit against direct final-code encoding.
"""

from __future__ import annotations

import numpy as np

from dataclasses import dataclass
from fractions import Fraction

from . import bounds, galois
from .entropy_oracle import LinearView
from .galois import FieldSpec
from .lrc import (ConstructionFailed, InvalidParams, LrcCode, LrcParams,
                  MAX_CONSTRUCT_ATTEMPTS, NodeIndex, NodeKind,
                  DEFAULT_PATTERN_BUDGET, encode, node_group, node_list,
                  verify_distance)


class UnsupportedRegime(Exception):
    """Requested conversion has no executable procedure here (gF > gI)."""


class RoleViolation(Exception):
    """A pair breaks the structural node-role classification."""


class ConversionIncorrect(Exception):
    """Executed conversion output differs from direct final encoding."""


@dataclass(frozen=True)
class MergeSpec:
    """Parameters of a stable global-merge conversion."""

    kI: int
    gI: int
    r: int
    delta: int
    lam: int
    gF: int
    alpha: int = 1

    def __post_init__(self):
        if self.lam < 2:
            raise InvalidParams(f"merge regime requires lambda >= 2, got {self.lam}")
        if self.gF < 0:
            raise InvalidParams("gF must be >= 0")
        # reuse the code-family validation for the initial parameters
        LrcParams(self.kI, self.gI, self.r, self.delta, self.alpha)

    @property
    def kF(self) -> int:
        return self.lam * self.kI

    @property
    def muI(self) -> int:
        return self.kI // self.r

    @property
    def muF(self) -> int:
        return self.lam * self.muI

    @property
    def message_size(self) -> int:
        return self.kF  # lcm(kI, kF) = kF in the merge regime

    @property
    def nI(self) -> int:
        return self.initial_params().n

    @property
    def nF(self) -> int:
        return self.final_params().n

    def initial_params(self) -> LrcParams:
        return LrcParams(self.kI, self.gI, self.r, self.delta, self.alpha)

    def final_params(self) -> LrcParams:
        return LrcParams(self.kF, self.gF, self.r, self.delta, self.alpha)

    def to_json(self) -> dict:
        return {"kI": self.kI, "gI": self.gI, "r": self.r, "delta": self.delta,
                "lambda": self.lam, "gF": self.gF, "alpha": self.alpha}

    @staticmethod
    def from_json(obj: dict) -> "MergeSpec":
        return MergeSpec(kI=int(obj["kI"]), gI=int(obj["gI"]), r=int(obj["r"]),
                         delta=int(obj["delta"]), lam=int(obj["lambda"]),
                         gF=int(obj["gF"]), alpha=int(obj.get("alpha", 1)))


@dataclass
class ConvertiblePair:
    """Initial/final codes whose info + local layout agree block-diagonally."""

    spec: MergeSpec
    initial: LrcCode
    final: LrcCode
    coefficients: np.ndarray  # (lam, gF) nonzero mixing scalars
    layout_compatible: bool = False


@dataclass
class DownloadPlan:
    """Per-node download maps: (rows downloaded) x alpha over the field.

    Order is canonical everywhere: information nodes 1..lam*kI, then initial
    global parities 1..lam*gI, then local parities 1..lam*muI*delta.
    """

    spec: MergeSpec
    info_maps: list[np.ndarray]
    global_maps: list[np.ndarray]
    local_maps: list[np.ndarray]

    def __post_init__(self):
        s = self.spec
        expect = [(self.info_maps, s.lam * s.kI, "info"),
                  (self.global_maps, s.lam * s.gI, "global"),
                  (self.local_maps, s.lam * s.muI * s.delta, "local")]
        for maps, want, kind in expect:
            if len(maps) != want:
                raise InvalidParams(f"{kind} maps: expected {want}, got {len(maps)}")
            for m in maps:
                if m.shape[1] != s.alpha or not 0 <= m.shape[0] <= s.alpha:
                    raise InvalidParams(
                        f"{kind} map shape {m.shape} outside (0..alpha) x alpha")

    @property
    def beta(self) -> list[int]:
        return [m.shape[0] for m in self.info_maps]

    @property
    def sigma(self) -> list[int]:
        return [m.shape[0] for m in self.global_maps]

    @property
    def deltas(self) -> list[int]:
        return [m.shape[0] for m in self.local_maps]

    def all_maps(self) -> list[np.ndarray]:
        return list(self.info_maps) + list(self.global_maps) + list(self.local_maps)

    @property
    def total_downloaded(self) -> int:
        return sum(m.shape[0] for m in self.all_maps())

    def offsets(self) -> list[int]:
        """Start offset of each map's rows in the concatenated download vector."""
        offs, acc = [], 0
        for m in self.all_maps():
            offs.append(acc)
            acc += m.shape[0]
        return offs


@dataclass
class ConversionProcedure:
    """A download plan plus one synthesis matrix per new node."""

    plan: DownloadPlan
    synthesis: list[np.ndarray]  # gF entries, each (total_downloaded, alpha)
    name: str = ""

    def __post_init__(self):
        s = self.plan.spec
        if len(self.synthesis) != s.gF:
            raise InvalidParams(f"expected {s.gF} synthesis maps")
        total = self.plan.total_downloaded
        for m in self.synthesis:
            if m.shape != (total, s.alpha):
                raise InvalidParams(
                    f"synthesis shape {m.shape} != ({total}, {s.alpha})")

    @property
    def gammaR(self) -> int:
        return self.plan.total_downloaded


@dataclass
class BandwidthReport:
    beta: list[int]
    sigma: list[int]
    deltas: list[int]
    gammaR: int
    gammaW: int
    bound: Fraction
    gap: Fraction
    case_label: str
    optimal: bool

    def to_json(self) -> dict:
        return {
            "beta": self.beta, "sigma": self.sigma, "deltas": self.deltas,
            "gammaR": self.gammaR, "gammaW": self.gammaW,
            "bound": bounds.format_exact(self.bound),
            "gap": bounds.format_exact(self.gap),
            "case": self.case_label,
            "optimal": self.optimal,
        }


@dataclass
class RoleAssignment:
    unchanged: list[tuple[int, NodeIndex]]  # (codeword t, initial node)
    retired: list[tuple[int, NodeIndex]]
    new: list[NodeIndex]  # final global parities

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.new), len(self.retired), len(self.unchanged)


# ---------------------------------------------------------------------------
# layout helpers (block-major global indexing of the merged codeword)
# ---------------------------------------------------------------------------

def final_node_of(spec: MergeSpec, t: int, node: NodeIndex) -> NodeIndex:
    """Final-code identity of an initial node of codeword t (1-based)."""
    if node.kind is NodeKind.INFORMATION:
        return NodeIndex(NodeKind.INFORMATION, (t - 1) * spec.kI + node.index)
    if node.kind is NodeKind.LOCAL_PARITY:
        return NodeIndex(NodeKind.LOCAL_PARITY,
                         (t - 1) * spec.muI * spec.delta + node.index)
    raise InvalidParams("initial global parities retire; no final identity")


def lifted_node_view(pair: ConvertiblePair, t: int, node: NodeIndex) -> np.ndarray:
    """Initial node's stored functionals over the merged message space."""
    spec = pair.spec
    cols = list(pair.initial.columns(node))
    alpha = spec.alpha
    out = galois.zeros(alpha, spec.kF * alpha)
    lo = (t - 1) * spec.kI * alpha
    out[:, lo: lo + spec.kI * alpha] = pair.initial.generator[:, cols].T
    return out


def final_node_block(pair: ConvertiblePair, node: NodeIndex) -> np.ndarray:
    """Final node's stored functionals (alpha x kF*alpha)."""
    cols = list(pair.final.columns(node))
    return pair.final.generator[:, cols].T.copy()


# ---------------------------------------------------------------------------
# pair construction
# ---------------------------------------------------------------------------

def _final_base(spec: MergeSpec, initial: LrcCode) -> tuple[np.ndarray, int]:
    """Final generator with info + local columns filled; returns (gen, global
    column base).  Info block is the identity; local parities are lam
    block-diagonal copies of the initial local columns."""
    kI, lam, alpha = spec.kI, spec.lam, spec.alpha
    gen = galois.zeros(spec.kF * alpha, spec.final_params().n * alpha)
    iparams = spec.initial_params()
    ilocal_cols = list(range(kI * alpha, (kI + iparams.mu * iparams.delta) * alpha))
    gen[:, : spec.kF * alpha] = galois.eye(spec.kF * alpha)
    loc_base = spec.kF * alpha
    nloc = len(ilocal_cols)
    for t in range(lam):
        rows = slice(t * kI * alpha, (t + 1) * kI * alpha)
        cols = slice(loc_base + t * nloc, loc_base + (t + 1) * nloc)
        gen[rows, cols] = initial.generator[:, ilocal_cols]
    return gen, loc_base + lam * nloc


def _final_generator(spec: MergeSpec, initial: LrcCode, coeff: np.ndarray,
                     fs: FieldSpec) -> np.ndarray:
    """Final global parities mix the matching initial parity of each codeword
    with nonzero coefficients (requires gF <= gI)."""
    kI, alpha = spec.kI, spec.alpha
    gen, glob_base = _final_base(spec, initial)
    for i in range(spec.gF):
        icols = list(initial.columns(NodeIndex(NodeKind.GLOBAL_PARITY, i + 1)))
        for t in range(spec.lam):
            rows = slice(t * kI * alpha, (t + 1) * kI * alpha)
            cols = slice(glob_base + i * alpha, glob_base + (i + 1) * alpha)
            gen[rows, cols] = galois.scale(initial.generator[:, icols],
                                           int(coeff[t, i]), fs)
    return gen


def _final_generator_fresh(spec: MergeSpec, initial: LrcCode,
                           parity_rows: np.ndarray) -> np.ndarray:
    """Final global parities from fresh full-support rows over all kF
    information symbols (any gF)."""
    alpha = spec.alpha
    gen, glob_base = _final_base(spec, initial)
    for i in range(spec.gF):
        for j in range(spec.kF):
            for s in range(alpha):
                gen[j * alpha + s, glob_base + i * alpha + s] = parity_rows[i, j]
    return gen


def verify_layout(pair: ConvertiblePair) -> bool:
    """Final info + local columns equal lam block-diagonal initial copies."""
    spec = pair.spec
    for t in range(1, spec.lam + 1):
        for node in node_list(spec.initial_params()):
            if node.kind is NodeKind.GLOBAL_PARITY:
                continue
            want = lifted_node_view(pair, t, node)
            got = final_node_block(pair, final_node_of(spec, t, node))
            if not np.array_equal(want, got):
                return False
    return True


def build_merge_pair(spec: MergeSpec, fs: FieldSpec, seed: int,
                     budget: int = DEFAULT_PATTERN_BUDGET) -> ConvertiblePair:
    """Construct a verified convertible pair for gF <= gI.

    All lam initial codewords share one code instance.  Final global parities
    mix the matching initial parity of each codeword with sampled nonzero
    coefficients; the final code is re-verified for optimal distance and the
    coefficients resampled on failure.
    """
    if spec.gF > spec.gI:
        raise UnsupportedRegime(
            f"gF = {spec.gF} > gI = {spec.gI}: bound only, no executable procedure")
    from .lrc import construct_pyramid
    initial = construct_pyramid(spec.initial_params(), fs, seed, budget=budget)
    target = spec.gF + spec.delta + 1
    for attempt in range(MAX_CONSTRUCT_ATTEMPTS):
        rng = np.random.default_rng((seed, attempt, 1))
        coeff = rng.integers(1, fs.q, size=(spec.lam, max(spec.gF, 1)),
                             dtype=np.uint16)[:, : spec.gF].reshape(spec.lam, spec.gF)
        gen = _final_generator(spec, initial, coeff, fs)
        final = LrcCode(params=spec.final_params(), field=fs, generator=gen)
        report = verify_distance(final, budget=budget)
        if report.d == target:
            pair = ConvertiblePair(spec=spec, initial=initial, final=final,
                                   coefficients=coeff)
            pair.layout_compatible = verify_layout(pair)
            if not pair.layout_compatible:
                raise AssertionError("constructed pair lost layout compatibility")
            return pair
    raise ConstructionFailed(
        f"no coefficient sample reached final distance {target} in "
        f"{MAX_CONSTRUCT_ATTEMPTS} attempts")


def build_layout_pair(spec: MergeSpec, fs: FieldSpec, seed: int,
                      budget: int = DEFAULT_PATTERN_BUDGET) -> ConvertiblePair:
    """Layout-compatible verified pair for any gF (no procedure implied).

    For gF <= gI this defers to build_merge_pair.  For gF > gI the final
    global parities are freshly sampled Cauchy rows over all kF information
    symbols: the pair exists and classifies, but no executable conversion
    procedure is provided for that regime.
    """
    if spec.gF <= spec.gI:
        return build_merge_pair(spec, fs, seed, budget=budget)
    if fs.q <= spec.kF + spec.gF:
        raise InvalidParams(f"field of size {fs.q} too small for kF + gF points")
    from .lrc import construct_pyramid
    initial = construct_pyramid(spec.initial_params(), fs, seed, budget=budget)
    target = spec.gF + spec.delta + 1
    for attempt in range(MAX_CONSTRUCT_ATTEMPTS):
        rng = np.random.default_rng((seed, attempt, 2))
        pts = rng.permutation(fs.q)[: spec.kF + spec.gF]
        rows = galois.zeros(spec.gF, spec.kF)
        for i in range(spec.gF):
            for j in range(spec.kF):
                rows[i, j] = galois.gf_inv(
                    int(pts[spec.kF + i]) ^ int(pts[j]), fs)
        final = LrcCode(params=spec.final_params(), field=fs,
                        generator=_final_generator_fresh(spec, initial, rows))
        if verify_distance(final, budget=budget).d == target:
            pair = ConvertiblePair(spec=spec, initial=initial, final=final,
                                   coefficients=galois.zeros(spec.lam, 0))
            pair.layout_compatible = verify_layout(pair)
            return pair
    raise ConstructionFailed(
        f"no fresh-parity sample reached final distance {target} in "
        f"{MAX_CONSTRUCT_ATTEMPTS} attempts")


# ---------------------------------------------------------------------------
# node-role classification
# ---------------------------------------------------------------------------

def classify_nodes(pair: ConvertiblePair) -> RoleAssignment:
    """Role assignment for a stable merge, verified against the generators.

    Raises RoleViolation when the pair's structure contradicts the stable
    classification (e.g. a "new" final global parity that actually equals an
    initial node, or an unchanged local parity serving different info).
    """
    spec = pair.spec
    iparams = spec.initial_params()
    inodes = node_list(iparams)
    lifted = {(t, nd): lifted_node_view(pair, t, nd)
              for t in range(1, spec.lam + 1) for nd in inodes}
    final_nodes = node_list(spec.final_params())
    final_blocks = {nd: final_node_block(pair, nd) for nd in final_nodes}

    new_nodes = [nd for nd in final_nodes if nd.kind is NodeKind.GLOBAL_PARITY]
    for nd in new_nodes:
        blk = final_blocks[nd]
        for (t, ind), view in lifted.items():
            if np.array_equal(blk, view):
                raise RoleViolation(
                    f"final {nd} equals initial codeword-{t} {ind}: not a new node")

    retired = [(t, nd) for t in range(1, spec.lam + 1) for nd in inodes
               if nd.kind is NodeKind.GLOBAL_PARITY]
    for (t, nd) in retired:
        view = lifted[(t, nd)]
        for fnd, blk in final_blocks.items():
            if np.array_equal(view, blk):
                raise RoleViolation(
                    f"initial codeword-{t} {nd} persists as final {fnd}: not retired")

    unchanged = []
    alpha = spec.alpha
    for t in range(1, spec.lam + 1):
        for nd in inodes:
            if nd.kind is NodeKind.GLOBAL_PARITY:
                continue
            fnd = final_node_of(spec, t, nd)
            if not np.array_equal(lifted[(t, nd)], final_blocks[fnd]):
                raise RoleViolation(
                    f"codeword-{t} {nd} does not carry over to final {fnd}")
            if nd.kind is NodeKind.LOCAL_PARITY:
                # support confined to its own group's message rows
                tau = node_group(spec.final_params(), fnd)
                lo = ((tau - 1) * spec.r) * alpha
                hi = (tau * spec.r) * alpha
                blk = final_blocks[fnd]
                outside = np.delete(blk, np.s_[lo:hi], axis=1)
                if outside.any():
                    raise RoleViolation(
                        f"final {fnd} depends on information outside group {tau}")
            unchanged.append((t, nd))

    return RoleAssignment(unchanged=unchanged, retired=retired, new=new_nodes)


# ---------------------------------------------------------------------------
# procedures
# ---------------------------------------------------------------------------

def _empty_plan_maps(spec: MergeSpec):
    alpha = spec.alpha
    none = lambda count: [galois.zeros(0, alpha) for _ in range(count)]
    return (none(spec.lam * spec.kI), none(spec.lam * spec.gI),
            none(spec.lam * spec.muI * spec.delta))


def default_reencode_procedure(pair: ConvertiblePair) -> ConversionProcedure:
    """Baseline: download every information symbol, re-encode the new nodes."""
    spec = pair.spec
    alpha = spec.alpha
    info, glob, loc = _empty_plan_maps(spec)
    info = [galois.eye(alpha) for _ in range(spec.lam * spec.kI)]
    plan = DownloadPlan(spec=spec, info_maps=info, global_maps=glob, local_maps=loc)
    # downloads are exactly the message vector, in order
    synthesis = []
    for i in range(1, spec.gF + 1):
        nd = NodeIndex(NodeKind.GLOBAL_PARITY, i)
        cols = list(pair.final.columns(nd))
        synthesis.append(pair.final.generator[:, cols].copy())
    return ConversionProcedure(plan=plan, synthesis=synthesis, name="default")


def merge_optimal_procedure(pair: ConvertiblePair) -> ConversionProcedure:
    """Download only the first gF initial global parities of each codeword and
    mix them with the pair's coefficients; gamma_R = lam * gF * alpha."""
    spec = pair.spec
    if spec.gF > spec.gI:
        raise UnsupportedRegime("merge-optimal procedure requires gF <= gI")
    alpha = spec.alpha
    info, glob, loc = _empty_plan_maps(spec)
    for t in range(spec.lam):
        for i in range(spec.gF):
            glob[t * spec.gI + i] = galois.eye(alpha)
    plan = DownloadPlan(spec=spec, info_maps=info, global_maps=glob, local_maps=loc)
    total = plan.total_downloaded
    offsets = plan.offsets()
    fs = pair.initial.field
    synthesis = []
    for i in range(spec.gF):
        s = galois.zeros(total, alpha)
        for t in range(spec.lam):
            off = offsets[spec.lam * spec.kI + t * spec.gI + i]
            s[off: off + alpha, :] = galois.scale(
                galois.eye(alpha), int(pair.coefficients[t, i]), fs)
        synthesis.append(s)
    return ConversionProcedure(plan=plan, synthesis=synthesis, name="merge-optimal")


def zero_global_download(procedure: ConversionProcedure, t: int,
                         i: int) -> ConversionProcedure:
    """Mutation hook: drop the download from initial global parity i of
    codeword t, removing the matching synthesis rows."""
    plan = procedure.plan
    spec = plan.spec
    idx = (t - 1) * spec.gI + (i - 1)
    offsets = plan.offsets()
    off = offsets[spec.lam * spec.kI + idx]
    rows = plan.global_maps[idx].shape[0]
    glob = list(plan.global_maps)
    glob[idx] = galois.zeros(0, spec.alpha)
    new_plan = DownloadPlan(spec=spec, info_maps=list(plan.info_maps),
                            global_maps=glob, local_maps=list(plan.local_maps))
    synthesis = [np.delete(s, np.s_[off: off + rows], axis=0)
                 for s in procedure.synthesis]
    return ConversionProcedure(plan=new_plan, synthesis=synthesis,
                               name=procedure.name + "+zeroed")


# ---------------------------------------------------------------------------
# execution and accounting
# ---------------------------------------------------------------------------

def _plan_nodes(spec: MergeSpec):
    """(codeword t, initial node) in canonical download order."""
    out = []
    for kind, count in ((NodeKind.INFORMATION, spec.kI),
                        (NodeKind.GLOBAL_PARITY, spec.gI),
                        (NodeKind.LOCAL_PARITY, spec.muI * spec.delta)):
        for t in range(1, spec.lam + 1):
            for j in range(1, count + 1):
                out.append((t, NodeIndex(kind, j)))
    return out


def execute(procedure: ConversionProcedure, pair: ConvertiblePair,
            message: np.ndarray) -> tuple[np.ndarray, BandwidthReport]:
    """Run the conversion and account bandwidth exactly.

    Encodes the lam initial codewords from consecutive message blocks, applies
    the download maps to stored symbols only, synthesizes the new nodes from
    the concatenated downloads, and assembles the final codeword from
    unchanged nodes plus new nodes.  Raises ConversionIncorrect unless the
    result is bit-exact against direct final encoding.
    """
    spec = pair.spec
    alpha = spec.alpha
    msg = np.asarray(message, dtype=np.uint16)
    if msg.shape != (spec.kF * alpha,):
        raise ValueError(f"message length {msg.shape} != kF*alpha")
    fs = pair.initial.field
    codewords = {}
    for t in range(1, spec.lam + 1):
        block = msg[(t - 1) * spec.kI * alpha: t * spec.kI * alpha]
        codewords[t] = encode(pair.initial, block)

    maps = procedure.plan.all_maps()
    downloads = []
    for (t, node), dmap in zip(_plan_nodes(spec), maps):
        if dmap.shape[0] == 0:
            continue
        stored = codewords[t][list(pair.initial.columns(node))]
        downloads.append(galois.matmul(stored[None, :], dmap.T, fs)[0])
    dvec = (np.concatenate(downloads) if downloads
            else np.zeros(0, dtype=np.uint16))

    fparams = spec.final_params()
    assembled = np.zeros(fparams.n * alpha, dtype=np.uint16)
    for t in range(1, spec.lam + 1):
        for node in node_list(spec.initial_params()):
            if node.kind is NodeKind.GLOBAL_PARITY:
                continue
            fnd = final_node_of(spec, t, node)
            assembled[list(pair.final.columns(fnd))] = \
                codewords[t][list(pair.initial.columns(node))]
    for i, synth in enumerate(procedure.synthesis, start=1):
        fnd = NodeIndex(NodeKind.GLOBAL_PARITY, i)
        assembled[list(pair.final.columns(fnd))] = \
            galois.matmul(dvec[None, :], synth, fs)[0]

    expected = encode(pair.final, msg)
    if not np.array_equal(assembled, expected):
        raise ConversionIncorrect(
            f"procedure {procedure.name!r} output differs from direct encoding")

    plan = procedure.plan
    breport = bounds.gap_report(spec, plan.total_downloaded)
    report = BandwidthReport(
        beta=plan.beta, sigma=plan.sigma, deltas=plan.deltas,
        gammaR=plan.total_downloaded, gammaW=spec.gF * alpha,
        bound=breport.bound_gammaR, gap=breport.gap,
        case_label=breport.case_label, optimal=breport.gap == 0)
    return assembled, report


# ---------------------------------------------------------------------------
# entropy wiring for the download-constraint check
# ---------------------------------------------------------------------------

def download_views(pair: ConvertiblePair, plan: DownloadPlan):
    """LinearViews of the downloaded data over the merged message space.

    Returns (u_block_views, v_views, w_views): one joint view per codeword's
    global-parity downloads, and one view per information / local-parity node.
    """
    spec = pair.spec
    fs = pair.initial.field
    dim = spec.kF * spec.alpha

    def view_for(t, node, dmap, label):
        lifted = lifted_node_view(pair, t, node)
        return LinearView(galois.matmul(dmap, lifted, fs), label)

    v_views = []
    for j, dmap in enumerate(plan.info_maps):
        t = j // spec.kI + 1
        node = NodeIndex(NodeKind.INFORMATION, j % spec.kI + 1)
        v_views.append(view_for(t, node, dmap, f"V{j + 1}"))
    u_blocks = []
    for t in range(1, spec.lam + 1):
        mats = []
        for i in range(spec.gI):
            dmap = plan.global_maps[(t - 1) * spec.gI + i]
            node = NodeIndex(NodeKind.GLOBAL_PARITY, i + 1)
            mats.append(galois.matmul(dmap, lifted_node_view(pair, t, node), fs))
        joint = (np.vstack(mats) if mats
                 else np.zeros((0, dim), dtype=np.uint16)).astype(np.uint16)
        u_blocks.append(LinearView(joint, f"U-block-{t}"))
    w_views = []
    per = spec.muI * spec.delta
    for a, dmap in enumerate(plan.local_maps):
        t = a // per + 1
        node = NodeIndex(NodeKind.LOCAL_PARITY, a % per + 1)
        w_views.append(view_for(t, node, dmap, f"W{a + 1}"))
    return u_blocks, v_views, w_views


def plan_entropies(pair: ConvertiblePair, plan: DownloadPlan):
    """Rank entropies (field symbols) of a plan's downloads, sized for the
    download-constraint LHS."""
    from .entropy_oracle import entropy
    fs = pair.initial.field
    u_blocks, v_views, w_views = download_views(pair, plan)
    u = [entropy([uv], fs) for uv in u_blocks]
    v = [entropy([vv], fs) for vv in v_views]
    w = [entropy([wv], fs) for wv in w_views]
    return u, v, w
