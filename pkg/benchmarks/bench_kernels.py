#!/usr/bin/env python3
"""Times the JIT kernels against their pure-numpy fallbacks.

Run from the repository root after installing the package:

    python3 benchmarks/bench_kernels.py

The same kernels are selected at import time by the IGBS_NUMBA flag; this
script times both implementations side by side in one process.
"""

import time

import numpy as np

from igbs.accel import NUMBA_IMPL, NUMPY_IMPL


def make_workloads(rng):
    n = 200_000
    x = rng.integers(0, 16, size=n)
    y = rng.integers(0, 16, size=n)
    z = rng.integers(0, 17, size=n)
    feats_a = rng.random((1200, 60))
    feats_b = rng.random((1200, 60))
    train = rng.random((3000, 20))
    test = rng.random((3000, 20))

    n_svm = 600
    svm_x = rng.random((n_svm, 30))
    svm_y = np.where(rng.random(n_svm) < 0.5, 1.0, -1.0)
    svm_x[svm_y > 0, :5] += 0.3
    sq = (
        np.einsum("ij,ij->i", svm_x, svm_x)[:, None]
        + np.einsum("ij,ij->i", svm_x, svm_x)[None, :]
        - 2.0 * (svm_x @ svm_x.T)
    )
    kernel = np.exp(-np.clip(sq, 0, None) / 30.0)

    return {
        "hist2d": (x, y, 16, 16),
        "hist3d": (x, y, z, 16, 16, 17),
        "rbf_kernel": (feats_a, feats_b, 0.05),
        "nn1_index": (train, test),
        "smo_solve": (kernel, svm_y, 10.0, 1e-3, 200_000),
    }


def best_time(fn, args, repeats=5):
    fn(*args)  # warm-up (JIT compilation for the numba path)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    rng = np.random.default_rng(0)
    workloads = make_workloads(rng)
    header = f"{'kernel':<12}{'numpy':>12}{'numba':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, args in workloads.items():
        t_np = best_time(NUMPY_IMPL[name], args)
        if NUMBA_IMPL is None:
            print(f"{name:<12}{t_np * 1e3:>10.2f}ms{'n/a':>12}{'n/a':>10}")
            continue
        t_nb = best_time(NUMBA_IMPL[name], args)
        print(
            f"{name:<12}{t_np * 1e3:>10.2f}ms{t_nb * 1e3:>10.2f}ms"
            f"{t_np / t_nb:>9.1f}x"
        )


if __name__ == "__main__":
    main()
