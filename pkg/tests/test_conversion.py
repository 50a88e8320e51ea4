import numpy as np
import pytest

from lrcc import bounds, conversion, galois, lrc
from lrcc.conversion import MergeSpec
from lrcc.lrc import NodeIndex, NodeKind


def test_merge_spec_validation():
    with pytest.raises(lrc.InvalidParams):
        MergeSpec(kI=4, gI=2, r=2, delta=1, lam=1, gF=2)
    with pytest.raises(lrc.InvalidParams):
        MergeSpec(kI=5, gI=2, r=2, delta=1, lam=2, gF=2)
    spec = MergeSpec(kI=4, gI=2, r=2, delta=1, lam=2, gF=2)
    assert (spec.kF, spec.muI, spec.muF, spec.nI, spec.nF) == (8, 2, 4, 8, 14)
    assert spec.message_size == 8


def test_merge_spec_json_roundtrip():
    spec = MergeSpec(kI=9, gI=3, r=3, delta=1, lam=2, gF=3, alpha=2)
    assert MergeSpec.from_json(spec.to_json()) == spec
    assert spec.to_json()["lambda"] == 2


def test_pair_verified_distances(pair_small):
    assert pair_small.initial.distance == 4
    assert pair_small.final.distance == 4
    assert pair_small.layout_compatible
    assert conversion.verify_layout(pair_small)


def test_minimal_pair(gf8):
    spec = MergeSpec(kI=2, gI=1, r=2, delta=1, lam=2, gF=1)
    pair = conversion.build_merge_pair(spec, gf8, seed=5)
    assert pair.final.distance == 3


def test_unsupported_regime(gf8):
    spec = MergeSpec(kI=4, gI=1, r=2, delta=1, lam=2, gF=2)
    with pytest.raises(conversion.UnsupportedRegime):
        conversion.build_merge_pair(spec, gf8, seed=0)


def test_classify_counts(pair_small):
    roles = conversion.classify_nodes(pair_small)
    assert roles.counts == (2, 4, 12)


def test_classify_grown_parity_merge(gf8):
    spec = MergeSpec(kI=9, gI=3, r=3, delta=1, lam=2, gF=4)
    pair = conversion.build_layout_pair(spec, gf8, seed=1)
    assert pair.final.distance == 6
    roles = conversion.classify_nodes(pair)
    assert roles.counts == (4, 6, 24)


def test_classify_rejects_copied_parity(pair_small):
    # corrupt the final code: global parity 1 copies initial codeword-1's
    # global parity 1 (single-block support: cannot be a new node)
    spec = pair_small.spec
    bad_gen = pair_small.final.generator.copy()
    nd = NodeIndex(NodeKind.GLOBAL_PARITY, 1)
    cols = list(pair_small.final.columns(nd))
    bad_gen[:, cols] = conversion.lifted_node_view(pair_small, 1, nd)[0][:, None]
    bad_final = lrc.LrcCode(params=spec.final_params(),
                            field=pair_small.final.field, generator=bad_gen)
    bad_pair = conversion.ConvertiblePair(
        spec=spec, initial=pair_small.initial, final=bad_final,
        coefficients=pair_small.coefficients)
    with pytest.raises(conversion.RoleViolation):
        conversion.classify_nodes(bad_pair)


def test_default_procedure_counts(pair_small):
    proc = conversion.default_reencode_procedure(pair_small)
    spec = pair_small.spec
    assert proc.gammaR == spec.lam * spec.kI * spec.alpha == 8
    assert proc.plan.beta == [1] * 8
    assert proc.plan.sigma == [0] * 4
    assert proc.plan.deltas == [0] * 4


def test_merge_optimal_counts(pair_small):
    proc = conversion.merge_optimal_procedure(pair_small)
    spec = pair_small.spec
    assert proc.gammaR == spec.lam * spec.gF * spec.alpha == 4
    assert proc.plan.beta == [0] * 8
    assert proc.plan.sigma == [1, 1, 1, 1]


def test_merge_optimal_alpha2(gf8):
    spec = MergeSpec(kI=9, gI=3, r=3, delta=1, lam=2, gF=3, alpha=2)
    pair = conversion.build_merge_pair(spec, gf8, seed=2)
    proc = conversion.merge_optimal_procedure(pair)
    assert proc.gammaR == 12  # lam * gF * alpha


def test_execute_matches_direct_encoding(pair_small):
    spec = pair_small.spec
    rng = np.random.default_rng(10)
    for proc in (conversion.merge_optimal_procedure(pair_small),
                 conversion.default_reencode_procedure(pair_small)):
        for _ in range(25):
            msg = rng.integers(0, 256, size=spec.kF, dtype=np.uint16)
            cw, report = conversion.execute(proc, pair_small, msg)
            assert np.array_equal(cw, lrc.encode(pair_small.final, msg))
        assert report.gammaR == proc.gammaR
        assert report.gammaW == spec.gF * spec.alpha
        assert report.gammaR == sum(report.beta) + sum(report.sigma) + sum(report.deltas)


def test_execute_zero_message(pair_small):
    spec = pair_small.spec
    zero = np.zeros(spec.kF, dtype=np.uint16)
    for proc in (conversion.merge_optimal_procedure(pair_small),
                 conversion.default_reencode_procedure(pair_small)):
        cw, _ = conversion.execute(proc, pair_small, zero)
        assert not cw.any()


def test_execute_bandwidth_report(pair_small):
    spec = pair_small.spec
    msg = np.arange(1, spec.kF + 1, dtype=np.uint16)
    _, opt = conversion.execute(conversion.merge_optimal_procedure(pair_small),
                                pair_small, msg)
    assert opt.gammaR == 4 and opt.gap == 0 and opt.optimal
    _, dflt = conversion.execute(conversion.default_reencode_procedure(pair_small),
                                 pair_small, msg)
    assert dflt.gammaR == 8 and dflt.gap == 4 and not dflt.optimal


def test_gf_zero_merge(gf8):
    spec = MergeSpec(kI=2, gI=1, r=2, delta=1, lam=2, gF=0)
    pair = conversion.build_merge_pair(spec, gf8, seed=4)
    proc = conversion.merge_optimal_procedure(pair)
    assert proc.gammaR == 0
    msg = np.array([5, 6, 7, 8], dtype=np.uint16)
    cw, report = conversion.execute(proc, pair, msg)
    assert np.array_equal(cw, lrc.encode(pair.final, msg))
    assert report.gammaR == 0 and report.gammaW == 0


def test_broken_procedure_detected(pair_small):
    proc = conversion.merge_optimal_procedure(pair_small)
    mutated = conversion.zero_global_download(proc, t=1, i=1)
    assert mutated.gammaR == proc.gammaR - pair_small.spec.alpha
    msg = np.arange(1, 9, dtype=np.uint16)
    with pytest.raises(conversion.ConversionIncorrect):
        conversion.execute(mutated, pair_small, msg)


def test_download_plan_validation(pair_small):
    spec = pair_small.spec
    good = conversion.merge_optimal_procedure(pair_small).plan
    with pytest.raises(lrc.InvalidParams):
        conversion.DownloadPlan(spec=spec, info_maps=good.info_maps[:-1],
                                global_maps=good.global_maps,
                                local_maps=good.local_maps)
    too_big = [galois.zeros(spec.alpha + 1, spec.alpha)] + \
        list(good.info_maps[1:])
    with pytest.raises(lrc.InvalidParams):
        conversion.DownloadPlan(spec=spec, info_maps=too_big,
                                global_maps=good.global_maps,
                                local_maps=good.local_maps)


def test_plan_entropies_match_worked_values(pair_small):
    spec = pair_small.spec
    u, v, w = conversion.plan_entropies(
        pair_small, conversion.merge_optimal_procedure(pair_small).plan)
    assert u == [2, 2] and sum(v) == 0 and sum(w) == 0
    lhs = bounds.download_constraint_lhs(u, v, w, spec)
    assert lhs == 4 == bounds.download_constraint_rhs(spec)
    u2, v2, w2 = conversion.plan_entropies(
        pair_small, conversion.default_reencode_procedure(pair_small).plan)
    assert sum(u2) == 0 and sum(v2) == 8 and sum(w2) == 0
    assert bounds.download_constraint_lhs(u2, v2, w2, spec) == 4


def test_default_never_cheaper_than_merge_optimal(pair_small, gf8):
    # downloading all information is always at least as expensive, with
    # equality only in the degenerate gF = kI situation
    dflt = conversion.default_reencode_procedure(pair_small)
    opt = conversion.merge_optimal_procedure(pair_small)
    assert dflt.gammaR >= opt.gammaR
    assert (dflt.gammaR == opt.gammaR) == (pair_small.spec.gF == pair_small.spec.kI)
    spec = MergeSpec(kI=2, gI=2, r=2, delta=1, lam=2, gF=2)  # gF == kI
    pair = conversion.build_merge_pair(spec, gf8, seed=8)
    assert conversion.default_reencode_procedure(pair).gammaR == \
        conversion.merge_optimal_procedure(pair).gammaR == 4


def test_pair_determinism(gf8):
    spec = MergeSpec(kI=4, gI=2, r=2, delta=1, lam=2, gF=2)
    a = conversion.build_merge_pair(spec, gf8, seed=3)
    b = conversion.build_merge_pair(spec, gf8, seed=3)
    assert np.array_equal(a.final.generator, b.final.generator)
    assert np.array_equal(a.coefficients, b.coefficients)
