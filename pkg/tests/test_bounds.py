from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lrcc import bounds
from lrcc.conversion import MergeSpec


def spec(kI, gI, r, delta, lam, gF, alpha=1):
    return MergeSpec(kI=kI, gI=gI, r=r, delta=delta, lam=lam, gF=gF, alpha=alpha)


# hand-evaluated piecewise values, one per case
CASE_TABLE = [
    (spec(8, 4, 4, 1, 2, 3), bounds.CASE_GF_LE_GI_AND_R, Fraction(6)),
    (spec(8, 2, 4, 1, 3, 4), bounds.CASE_GI_LT_GF_LE_R, Fraction(18)),
    (spec(4, 3, 2, 1, 2, 3), bounds.CASE_MIN_G_ABOVE_R, Fraction(4)),
    (spec(9, 3, 3, 1, 2, 4), bounds.CASE_OTHERWISE, Fraction(6)),
]


@pytest.mark.parametrize("sp,case,value", CASE_TABLE)
def test_bound_case_table(sp, case, value):
    report = bounds.read_bandwidth_bound(sp)
    assert report.case_label == case
    assert report.bound_gammaR == value
    assert isinstance(report.bound_gammaR, Fraction)


def test_bound_tightness_flag():
    assert bounds.read_bandwidth_bound(spec(8, 4, 4, 1, 2, 3)).tight
    assert not bounds.read_bandwidth_bound(spec(9, 3, 3, 1, 2, 4)).tight


def test_fractional_bound_exact():
    # (r+1)/(gF+1) = 4/3 leaves a non-integral symbol count
    report = bounds.read_bandwidth_bound(spec(6, 1, 3, 1, 2, 2))
    assert report.case_label == bounds.CASE_GI_LT_GF_LE_R
    assert report.bound_gammaR == Fraction(2) + Fraction(16, 3)
    assert report.bound_gammaR == Fraction(22, 3)
    assert bounds.format_exact(report.bound_gammaR) == "22/3"


def test_construction_cost_examples():
    assert bounds.construction_cost(spec(8, 4, 4, 1, 2, 3)) == 6
    cost = bounds.construction_cost(spec(8, 2, 4, 1, 3, 4))
    assert cost == 18  # 3 * ((8 + 2*1)*2/5 + 2)
    assert cost == bounds.read_bandwidth_bound(spec(8, 2, 4, 1, 3, 4)).bound_gammaR
    # boundary gF = gI collapses to lam * gI * alpha
    assert bounds.construction_cost(spec(8, 3, 4, 1, 2, 3)) == 6


def test_constraint_lhs_worked_values():
    sp = spec(4, 2, 2, 1, 2, 2)
    zeroes = dict(u_blocks=[0, 0], v=[0] * 8, w=[0] * 4)
    assert bounds.download_constraint_lhs(spec=sp, **zeroes) == 0
    # parity-only plan: each codeword's downloads carry 2 symbols of entropy
    assert bounds.download_constraint_lhs([2, 2], [0] * 8, [0] * 4, sp) == 4
    # re-encode plan: (min{gF,r}+1) / (muI*(r+1)) = 3/6 scales the 8 info symbols
    assert bounds.download_constraint_lhs([0, 0], [1] * 8, [0] * 4, sp) == 4
    assert bounds.download_constraint_rhs(sp) == 4


def test_constraint_size_and_range_checks():
    sp = spec(4, 2, 2, 1, 2, 2)
    with pytest.raises(bounds.SizeMismatch):
        bounds.download_constraint_lhs([2], [0] * 8, [0] * 4, sp)
    with pytest.raises(bounds.SizeMismatch):
        bounds.download_constraint_lhs([2, 2], [0] * 7, [0] * 4, sp)
    with pytest.raises(bounds.SizeMismatch):
        bounds.download_constraint_lhs([2, 2], [0] * 8, [0] * 3, sp)
    with pytest.raises(bounds.SizeMismatch):
        bounds.download_constraint_lhs([2, 2], [2] * 8, [0] * 4, sp)


def test_gap_report_baseline():
    sp = spec(8, 4, 4, 1, 2, 3)
    report = bounds.gap_report(sp, 16)
    assert report.bound_gammaR == 6
    assert report.gap == 10
    opt = bounds.gap_report(sp, 6)
    assert opt.gap == 0
    with pytest.raises(bounds.BoundViolation):
        bounds.gap_report(sp, 5)


def test_invalid_spec_rejected():
    class Loose:
        kI, gI, r, delta, lam, gF, alpha, muI = 4, 2, 2, 1, 1, 2, 1, 2
    with pytest.raises(bounds.InvalidSpec):
        bounds.read_bandwidth_bound(Loose())
    Loose.lam, Loose.kI = 2, 5
    with pytest.raises(bounds.InvalidSpec):
        bounds.construction_cost(Loose())


spec_strategy = st.tuples(
    st.sampled_from([2, 3, 4, 6, 8, 9, 12]),  # kI
    st.integers(0, 6),                        # gI
    st.sampled_from([1, 2, 3, 4, 6]),         # r
    st.integers(1, 3),                        # delta
    st.integers(2, 4),                        # lam
    st.integers(0, 6),                        # gF
).filter(lambda t: t[0] % t[2] == 0).map(lambda t: spec(*t))


@given(spec_strategy)
@settings(max_examples=300, deadline=None)
def test_exactly_one_case_guard_fires(sp):
    guards = [
        min(sp.gI, sp.gF) > sp.r,
        sp.gI >= sp.gF and sp.r >= sp.gF,
        sp.gI < sp.gF <= sp.r,
    ]
    label = bounds.classify_case(sp)
    if any(guards):
        assert sum(guards) == 1
        assert label == [bounds.CASE_MIN_G_ABOVE_R, bounds.CASE_GF_LE_GI_AND_R,
                         bounds.CASE_GI_LT_GF_LE_R][guards.index(True)]
    else:
        assert label == bounds.CASE_OTHERWISE


@given(spec_strategy)
@settings(max_examples=300, deadline=None)
def test_construction_dominates_bound(sp):
    cost = bounds.construction_cost(sp)
    bound = bounds.read_bandwidth_bound(sp).bound_gammaR
    assert cost >= bound
    if sp.gF <= sp.r and sp.delta == 1:
        assert cost == bound
    if sp.gF > sp.r:
        assert cost > bound
