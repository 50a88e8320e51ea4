"""Acceptance criteria, one test per criterion, each printing PASS/FAIL.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines in order.
"""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from conftest import GRID
from lrcc import bounds, conversion, entropy_oracle as eo, galois, lrc
from lrcc.conversion import MergeSpec


def _report(criterion, ok, detail):
    line = f"ACCEPTANCE criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    assert ok, line


# criterion 2 / 5 share these executed conversions
TIGHT_SPECS = [
    MergeSpec(kI=4, gI=2, r=2, delta=1, lam=lam, gF=gF)
    for lam in (2, 3) for gF in (1, 2)
] + [
    MergeSpec(kI=9, gI=3, r=3, delta=1, lam=2, gF=gF) for gF in (1, 2, 3)
]


@pytest.fixture(scope="module")
def tight_pairs(gf8):
    return {spec: conversion.build_merge_pair(spec, gf8, seed=3)
            for spec in TIGHT_SPECS}


def test_criterion_1_optimal_distance_grid(grid_codes):
    failures = []
    for (k, g, r, delta), code in grid_codes.items():
        if code.distance != g + delta + 1:
            failures.append(((k, g, r, delta), code.distance))
    _report(1, not failures,
            f"{len(grid_codes)} grid instances all reach d = g + delta + 1"
            if not failures else f"wrong distances: {failures}")


def test_criterion_2_tightness_with_executed_conversions(tight_pairs):
    checked = 0
    for spec, pair in tight_pairs.items():
        proc = conversion.merge_optimal_procedure(pair)
        bound = bounds.read_bandwidth_bound(spec).bound_gammaR
        assert proc.gammaR == spec.lam * spec.gF * spec.alpha
        assert Fraction(proc.gammaR) == bound
        rng = np.random.default_rng((42, spec.lam, spec.gF, spec.kI))
        report = None
        for _ in range(100):
            msg = rng.integers(0, 256, size=spec.kF * spec.alpha, dtype=np.uint16)
            # execute() raises ConversionIncorrect on any bit mismatch
            _, report = conversion.execute(proc, pair, msg)
        assert report.gap == 0
        checked += 1
    _report(2, checked == len(TIGHT_SPECS),
            f"{checked} specs achieve gammaR = lam*gF*alpha = bound over "
            f"100 random messages each")


def test_criterion_3_bound_case_table():
    cases = [
        (MergeSpec(kI=8, gI=4, r=4, delta=1, lam=2, gF=3), Fraction(6)),
        (MergeSpec(kI=8, gI=2, r=4, delta=1, lam=3, gF=4), Fraction(18)),
        (MergeSpec(kI=4, gI=3, r=2, delta=1, lam=2, gF=3), Fraction(4)),
        (MergeSpec(kI=9, gI=3, r=3, delta=1, lam=2, gF=4), Fraction(6)),
    ]
    got = [bounds.read_bandwidth_bound(s).bound_gammaR for s, _ in cases]
    want = [v for _, v in cases]
    _report(3, got == want, f"piecewise bound values {got} == {want}")


def _random_specs(rng, count, deltas):
    out = []
    while len(out) < count:
        r = int(rng.choice([1, 2, 3, 4, 6]))
        kI = int(r * rng.integers(1, 12 // r + 1))
        spec = MergeSpec(kI=kI, gI=int(rng.integers(0, 7)), r=r,
                         delta=int(rng.choice(deltas)),
                         lam=int(rng.integers(2, 5)),
                         gF=int(rng.integers(0, 7)),
                         alpha=int(rng.integers(1, 4)))
        out.append(spec)
    return out


def test_criterion_4_cost_dominates_bound():
    rng = np.random.default_rng(20250811)
    violations = []
    # tightness sample: single local parity per group, where the known
    # construction meets the bound whenever gF <= r
    for spec in _random_specs(rng, 500, deltas=[1]):
        cost = bounds.construction_cost(spec)
        bound = bounds.read_bandwidth_bound(spec).bound_gammaR
        if cost < bound:
            violations.append((spec, "cost below bound"))
        if spec.gF <= spec.r and cost != bound:
            violations.append((spec, f"not tight: {cost} != {bound}"))
    # dominance also holds with wider local redundancy
    for spec in _random_specs(rng, 250, deltas=[2, 3]):
        if bounds.construction_cost(spec) < \
                bounds.read_bandwidth_bound(spec).bound_gammaR:
            violations.append((spec, "cost below bound"))
    _report(4, not violations,
            "750 random specs: cost >= bound, equality whenever gF <= r "
            "at delta=1" if not violations else f"violations: {violations[:3]}")


def test_criterion_5_download_constraint_on_executed_procedures(tight_pairs):
    checked = 0
    for spec, pair in tight_pairs.items():
        rhs = bounds.download_constraint_rhs(spec)
        for proc in (conversion.merge_optimal_procedure(pair),
                     conversion.default_reencode_procedure(pair)):
            u, v, w = conversion.plan_entropies(pair, proc.plan)
            lhs = bounds.download_constraint_lhs(u, v, w, spec)
            assert lhs >= rhs, f"{spec}: {proc.name} LHS {lhs} < RHS {rhs}"
            checked += 1
    # mutation: dropping one parity download must never leave a *correct*
    # converter running below the bound
    spec = TIGHT_SPECS[1]
    pair = tight_pairs[spec]
    mutated = conversion.zero_global_download(
        conversion.merge_optimal_procedure(pair), t=1, i=1)
    assert mutated.gammaR < bounds.read_bandwidth_bound(spec).bound_gammaR
    broke = False
    try:
        conversion.execute(mutated, pair,
                           np.arange(spec.kF * spec.alpha, dtype=np.uint16))
    except conversion.ConversionIncorrect:
        broke = True
    u, v, w = conversion.plan_entropies(pair, mutated.plan)
    still_satisfies = bounds.download_constraint_lhs(u, v, w, spec) >= \
        bounds.download_constraint_rhs(spec)
    _report(5, checked == 2 * len(TIGHT_SPECS) and (broke or still_satisfies),
            f"{checked} executed plans satisfy the constraint; mutated plan "
            f"{'breaks correctness' if broke else 'still satisfies it'}")


def test_criterion_6_structural_suite(grid_codes):
    failures = []
    for key, code in grid_codes.items():
        for res in (eo.check_total_entropy(code),
                    eo.check_group_uniformity(code),
                    eo.check_global_parity_support(code),
                    eo.check_erasure_entropy(code)):
            if not res.ok:
                failures.append((key, res.name, res.witness))
    mi = eo.check_mi_bound(200, seed=5150)
    sub = eo.check_subset_entropy_bound(200, seed=5151)
    if not mi.ok:
        failures.append(("random", mi.name, mi.witness))
    if not sub.ok:
        failures.append(("random", sub.name, sub.witness))
    _report(6, not failures,
            f"4 structural checks on {len(grid_codes)} instances plus "
            f"2x200 randomized inequality instances"
            if not failures else f"failed: {failures[:3]}")


def test_criterion_7_baseline_gap(gf8):
    spec = MergeSpec(kI=8, gI=4, r=4, delta=1, lam=2, gF=3)
    pair = conversion.build_merge_pair(spec, gf8, seed=6)
    proc = conversion.default_reencode_procedure(pair)
    msg = np.random.default_rng(1).integers(0, 256, size=spec.kF,
                                            dtype=np.uint16)
    _, report = conversion.execute(proc, pair, msg)
    ok = (report.gammaR == 16 and report.bound == 6 and report.gap == 10)
    _report(7, ok, f"default re-encode gammaR={report.gammaR} vs "
                   f"bound={bounds.format_exact(report.bound)}, "
                   f"gap={bounds.format_exact(report.gap)}")
