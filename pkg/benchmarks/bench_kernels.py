"""Time the numba and numpy backends on the three hot kernels.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time
from math import comb

import numpy as np

from adesign import _accel, kernels
from adesign.constructions import quadratic_residues
from adesign.groupalg import gf
from adesign.incidence import development


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    S = development(gf(103), quadratic_residues(103))
    words = S.packed()
    n3 = comb(S.v, 3)
    yield "level_histogram t=3 Dev(QR103)", (
        lambda: kernels.level_histogram_numba(words, S.v, 3, 0, n3),
        lambda: kernels.level_histogram_numpy(words, S.v, 3, 0, n3),
    )
    rng = np.random.default_rng(0)
    M = kernels.pack_rows(rng.integers(0, 2, (800, 1000)).astype(np.uint8))
    yield "echelon 800x1000", (
        lambda: kernels.echelon_numba(M, 1000),
        lambda: kernels.echelon_numpy(M, 1000),
    )
    _, basis = kernels.echelon_numpy(kernels.pack_rows(rng.integers(0, 2, (24, 80)).astype(np.uint8)), 80)
    hi = 1 << basis.shape[0]
    yield f"min_weight dim {basis.shape[0]}", (
        lambda: kernels.min_weight_numba(basis, 0, hi),
        lambda: kernels.min_weight_numpy(basis, 0, hi),
    )


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':36} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for name, (nb, npy) in cases():
        nb()  # compile outside the timed region
        a, b = nb(), npy()
        # min_weight may break ties differently, so compare the primary output only
        assert np.array_equal(a[0], b[0]), name
        tn, tp = best_of(nb, args.repeat), best_of(npy, args.repeat)
        print(f"{name:36} {tn:10.4f} {tp:10.4f} {tp / tn:8.1f}")


if __name__ == "__main__":
    main()
