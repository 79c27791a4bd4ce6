from itertools import combinations
from math import comb

import numpy as np
import pytest

from adesign import _accel, kernels

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


def _random_words(rng, rows, cols):
    return kernels.pack_rows(rng.integers(0, 2, (rows, cols)).astype(np.uint8))


def test_pack_unpack_roundtrip():
    rng = np.random.default_rng(0)
    for cols in (1, 63, 64, 65, 200):
        A = rng.integers(0, 2, (4, cols)).astype(np.uint8)
        W = kernels.pack_rows(A)
        assert W.shape == (4, kernels.n_words(cols))
        assert (kernels.unpack_rows(W, cols) == A).all()


def test_pack_sets():
    W = kernels.pack_sets([(0, 2), (65,)], 70)
    assert kernels.unpack_rows(W, 70)[0].nonzero()[0].tolist() == [0, 2]
    assert kernels.unpack_rows(W, 70)[1].nonzero()[0].tolist() == [65]


def test_unrank_combination_matches_itertools():
    for v, t in [(6, 0), (6, 1), (7, 3), (9, 4)]:
        for r, c in enumerate(combinations(range(v), t)):
            assert tuple(kernels.unrank_combination(r, v, t)) == c
        assert r + 1 == comb(v, t)


def test_level_histogram_numpy_brute_force():
    rng = np.random.default_rng(1)
    v, t = 9, 3
    A = rng.integers(0, 2, (6, v)).astype(np.uint8)
    W = kernels.pack_rows(A)
    hist, first = kernels.level_histogram_numpy(W, v, t, 0, comb(v, t), chunk=7)
    counts = [int(A[:, list(c)].all(axis=1).sum()) for c in combinations(range(v), t)]
    assert hist.tolist() == np.bincount(counts, minlength=7).tolist()
    for lv in range(7):
        assert first[lv] == (counts.index(lv) if lv in counts else -1)


@needs_numba
@pytest.mark.parametrize("seed", range(5))
def test_level_histogram_parity(seed):
    rng = np.random.default_rng(seed)
    v, t = 11, int(rng.integers(1, 5))
    W = _random_words(rng, 8, v)
    total = comb(v, t)
    lo, hi = sorted(rng.integers(0, total + 1, 2).tolist())
    a = kernels.level_histogram_numba(W, v, t, lo, hi)
    b = kernels.level_histogram_numpy(W, v, t, lo, hi)
    assert (a[0] == b[0]).all() and (a[1] == b[1]).all()


@needs_numba
@pytest.mark.parametrize("seed", range(5))
def test_echelon_parity(seed):
    rng = np.random.default_rng(seed)
    cols = int(rng.integers(1, 150))
    W = _random_words(rng, int(rng.integers(1, 20)), cols)
    ra, Ma = kernels.echelon_numba(W, cols)
    rb, Mb = kernels.echelon_numpy(W, cols)
    assert ra == rb and (Ma == Mb).all()


@needs_numba
@pytest.mark.parametrize("seed", range(5))
def test_min_weight_parity(seed):
    rng = np.random.default_rng(seed)
    r = int(rng.integers(1, 16))
    basis = _random_words(rng, r, 90)
    lo = int(rng.integers(0, 1 << r))
    hi = int(rng.integers(lo, (1 << r) + 1))
    wa, ga = kernels.min_weight_numba(basis, lo, hi)
    wb, gb = kernels.min_weight_numpy(basis, lo, hi, low_bits=3)
    assert wa == wb
    dense = kernels.unpack_rows(basis, 90)
    for w, g in ((wa, ga), (wb, gb)):
        if g >= 0:
            mask = [(g >> k) & 1 for k in range(r)]
            assert int(((np.array(mask) @ dense) % 2).sum()) == w


def test_use_numba_toggle():
    with _accel.use_numba(False):
        assert not _accel.numba_enabled() and _accel.backend_name() == "numpy"
        with _accel.use_numba(True):
            assert _accel.numba_enabled() == _accel.HAVE_NUMBA
        assert not _accel.numba_enabled()
