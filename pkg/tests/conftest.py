import pytest

from lrcc import conversion, galois, lrc

# acceptance grid: every (k, g, r, delta) with r | k and n <= 20
GRID = [
    (k, g, r, delta)
    for k in (2, 4, 6, 9)
    for g in (0, 1, 2, 3)
    for r in (2, 3)
    for delta in (1, 2)
    if k % r == 0 and k + (k // r) * delta + g <= 20
]


@pytest.fixture(scope="session")
def gf8():
    return galois.field(8)


@pytest.fixture(scope="session")
def gf16():
    return galois.field(16)


@pytest.fixture(scope="session")
def code4221(gf8):
    return lrc.construct_pyramid(lrc.LrcParams(4, 2, 2, 1), gf8, seed=7)


@pytest.fixture(scope="session")
def grid_codes(gf8):
    codes = {}
    for (k, g, r, delta) in GRID:
        params = lrc.LrcParams(k, g, r, delta)
        codes[(k, g, r, delta)] = lrc.construct_pyramid(params, gf8, seed=11)
    return codes


@pytest.fixture(scope="session")
def pair_small(gf8):
    spec = conversion.MergeSpec(kI=4, gI=2, r=2, delta=1, lam=2, gF=2)
    return conversion.build_merge_pair(spec, gf8, seed=3)
