"""Hot inner loops, each with a numba kernel and a pure-numpy twin.

Bit rows are packed little-endian into ``uint64`` words: column ``j`` lives
in word ``j >> 6`` at bit ``j & 63``. The public wrappers pick the backend
through :mod:`adesign._accel`; the ``*_numba`` / ``*_numpy`` functions are
exposed so tests can compare the two paths directly.
"""

from __future__ import annotations

from itertools import combinations, islice
from math import comb

import numpy as np

from . import _accel
from ._accel import njit

U1 = np.uint64(1)


# --------------------------------------------------------------------------
# packing


def n_words(ncols: int) -> int:
    return max(1, (ncols + 63) // 64)


def pack_rows(dense: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array into ``(rows, words)`` uint64."""
    dense = np.asarray(dense, dtype=bool)
    if dense.ndim != 2:
        raise ValueError("expected a 2-D array")
    r, n = dense.shape
    W = n_words(n)
    padded = np.zeros((r, W * 64), dtype=bool)
    padded[:, :n] = dense
    by = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(by).view("<u8").astype(np.uint64, copy=False).reshape(r, W)


def unpack_rows(words: np.ndarray, ncols: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype=np.uint64)
    r = words.shape[0]
    by = words.astype("<u8", copy=False).view(np.uint8).reshape(r, -1)
    bits = np.unpackbits(by, axis=1, bitorder="little")
    return bits[:, :ncols].astype(np.uint8)


def pack_sets(sets, n: int) -> np.ndarray:
    """Pack a sequence of index collections (each within ``0..n-1``)."""
    W = n_words(n)
    out = np.zeros((len(sets), W), dtype=np.uint64)
    for i, s in enumerate(sets):
        for x in s:
            out[i, x >> 6] |= U1 << np.uint64(x & 63)
    return out


if hasattr(np, "bitwise_count"):

    def _popcount_rows(words: np.ndarray) -> np.ndarray:
        return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)

else:  # pragma: no cover - numpy < 2
    _BYTE_POP = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)

    def _popcount_rows(words: np.ndarray) -> np.ndarray:
        by = np.ascontiguousarray(words).view(np.uint8)
        return _BYTE_POP[by].reshape(*words.shape[:-1], -1).sum(axis=-1)


# --------------------------------------------------------------------------
# combinations


def unrank_combination(rank: int, v: int, t: int) -> np.ndarray:
    """The ``rank``-th ``t``-subset of ``range(v)`` in lexicographic order."""
    out = np.empty(t, dtype=np.int64)
    x = 0
    for i in range(t):
        while True:
            c = comb(v - x - 1, t - i - 1)
            if rank < c:
                break
            rank -= c
            x += 1
        out[i] = x
        x += 1
    return out


# --------------------------------------------------------------------------
# t-subset level histogram


@njit
def _level_hist_nb(block_words, v, start_combo, count, nlevels):
    b, W = block_words.shape
    t = start_combo.shape[0]
    hist = np.zeros(nlevels, dtype=np.int64)
    first = np.full(nlevels, -1, dtype=np.int64)
    c = start_combo.copy()
    mask = np.zeros(W, dtype=np.uint64)
    one = np.uint64(1)
    for n in range(count):
        for w in range(W):
            mask[w] = np.uint64(0)
        for i in range(t):
            mask[c[i] >> 6] |= one << np.uint64(c[i] & 63)
        cnt = 0
        for j in range(b):
            ok = True
            for w in range(W):
                if (block_words[j, w] & mask[w]) != mask[w]:
                    ok = False
                    break
            if ok:
                cnt += 1
        hist[cnt] += 1
        if first[cnt] < 0:
            first[cnt] = n
        i = t - 1
        while i >= 0 and c[i] == v - t + i:
            i -= 1
        if i < 0:
            break
        c[i] += 1
        for j in range(i + 1, t):
            c[j] = c[j - 1] + 1
    return hist, first


def level_histogram_numba(block_words, v, t, start, stop):
    b = block_words.shape[0]
    count = stop - start
    if count <= 0:
        return np.zeros(b + 1, np.int64), np.full(b + 1, -1, np.int64)
    combo = unrank_combination(start, v, t)
    hist, first = _level_hist_nb(np.ascontiguousarray(block_words), v, combo, count, b + 1)
    first = np.where(first >= 0, first + start, -1)
    return hist, first


def level_histogram_numpy(block_words, v, t, start, stop, chunk=None):
    b = block_words.shape[0]
    hist = np.zeros(b + 1, np.int64)
    first = np.full(b + 1, -1, np.int64)
    if stop <= start:
        return hist, first
    inc = unpack_rows(block_words, v).T.astype(bool)  # v x b
    chunk = chunk or max(1, (1 << 22) // max(1, b))
    it = islice(combinations(range(v), t), start, stop)
    offset = start
    while True:
        rows = list(islice(it, chunk))
        if not rows:
            break
        cs = np.array(rows, dtype=np.int64).reshape(len(rows), t)
        acc = inc[cs[:, 0]].copy()
        for i in range(1, t):
            acc &= inc[cs[:, i]]
        counts = acc.sum(axis=1)
        hist += np.bincount(counts, minlength=b + 1)
        levels, idx = np.unique(counts, return_index=True)
        for lv, ix in zip(levels, idx):
            if first[lv] < 0:
                first[lv] = offset + ix
        offset += len(rows)
    return hist, first


def level_histogram(block_words, v, t, start, stop):
    """Histogram of containment counts over lexicographic ``t``-subset ranks ``[start, stop)``.

    Returns ``(hist, first)`` where ``hist[c]`` counts subsets lying in exactly
    ``c`` blocks and ``first[c]`` is the smallest such rank (``-1`` if none).
    """
    if _accel.numba_enabled():
        return level_histogram_numba(block_words, v, t, start, stop)
    return level_histogram_numpy(block_words, v, t, start, stop)


# --------------------------------------------------------------------------
# GF(2) elimination


@njit
def _echelon_nb(words, ncols):
    M = words.copy()
    r, W = M.shape
    rank = 0
    one = np.uint64(1)
    for col in range(ncols):
        if rank == r:
            break
        w = col >> 6
        bit = one << np.uint64(col & 63)
        piv = -1
        for i in range(rank, r):
            if M[i, w] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(W):
                tmp = M[rank, k]
                M[rank, k] = M[piv, k]
                M[piv, k] = tmp
        for i in range(r):
            if i != rank and (M[i, w] & bit):
                for k in range(W):
                    M[i, k] ^= M[rank, k]
        rank += 1
    return rank, M


def echelon_numba(words, ncols):
    rank, M = _echelon_nb(np.ascontiguousarray(words, dtype=np.uint64), ncols)
    return int(rank), M[:rank].copy()


def echelon_numpy(words, ncols):
    M = np.array(words, dtype=np.uint64, copy=True)
    r = M.shape[0]
    rank = 0
    for col in range(ncols):
        if rank == r:
            break
        w, bit = col >> 6, U1 << np.uint64(col & 63)
        hits = np.flatnonzero(M[rank:, w] & bit)
        if hits.size == 0:
            continue
        piv = rank + hits[0]
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        sel = (M[:, w] & bit) != 0
        sel[rank] = False
        M[sel] ^= M[rank]
        rank += 1
    return rank, M[:rank].copy()


def echelon(words, ncols):
    """Reduced row echelon form over GF(2): ``(rank, basis_rows)``."""
    if _accel.numba_enabled():
        return echelon_numba(words, ncols)
    return echelon_numpy(words, ncols)


# --------------------------------------------------------------------------
# minimum weight by Gray-code enumeration


@njit
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit
def _min_weight_nb(basis, lo, hi):
    r, W = basis.shape
    cw = np.zeros(W, dtype=np.uint64)
    g = lo ^ (lo >> 1)
    for k in range(r):
        if (g >> k) & 1:
            for w in range(W):
                cw[w] ^= basis[k, w]
    best = 1 << 62
    arg = -1
    for i in range(lo, hi):
        if i > lo:
            k = 0
            while not (i >> k) & 1:
                k += 1
            for w in range(W):
                cw[w] ^= basis[k, w]
        if i != 0:
            wt = 0
            for w in range(W):
                wt += _popcount64(cw[w])
            if wt < best:
                best = wt
                arg = i ^ (i >> 1)
    return best, arg


def min_weight_numba(basis, lo, hi):
    best, arg = _min_weight_nb(np.ascontiguousarray(basis, dtype=np.uint64), lo, hi)
    return int(best), int(arg)


def min_weight_numpy(basis, lo, hi, low_bits=14):
    """Same contract as the numba kernel; ``lo``/``hi`` index Gray-code steps.

    Works on aligned blocks of ``2**low_bits`` consecutive Gray indices, whose
    codewords are a fixed high part XOR every combination of the low rows.
    """
    basis = np.asarray(basis, dtype=np.uint64)
    r, W = basis.shape
    L = min(r, low_bits)
    low = np.zeros((1, W), dtype=np.uint64)
    for k in range(L):
        low = np.concatenate([low, low ^ basis[k]], axis=0)
    best, arg = 1 << 62, -1
    step = 1 << L
    blk = (lo // step) * step
    while blk < hi:
        # Gray codes in [blk, blk+step) share their bits above L
        a, z = max(lo, blk), min(hi, blk + step)
        high_g = (blk ^ (blk >> 1)) >> L << L
        hi_word = np.zeros(W, dtype=np.uint64)
        for k in range(L, r):
            if (high_g >> k) & 1:
                hi_word ^= basis[k]
        idx = np.arange(a, z, dtype=np.int64)
        gray = idx ^ (idx >> 1)
        sub = gray & (step - 1)
        words = low[sub] ^ hi_word
        wts = _popcount_rows(words)
        if a == 0:
            wts[0] = 1 << 62
        j = int(np.argmin(wts))
        if wts[j] < best:
            best, arg = int(wts[j]), int(gray[j])
        blk += step
    return best, arg


def min_weight(basis, lo, hi):
    """Minimum weight and its combination mask over Gray indices ``[lo, hi)`` (zero skipped)."""
    if _accel.numba_enabled():
        return min_weight_numba(basis, lo, hi)
    return min_weight_numpy(basis, lo, hi)
