"""JIT-compiled inner loops with a pure-numpy fallback.

The hot kernels (joint-histogram accumulation, the SMO solver, RBF kernel
matrices and 1-NN search) are compiled with numba when it is importable.
Set ``IGBS_NUMBA=0`` to force the numpy path; ``benchmarks/bench_kernels.py``
times the two side by side.

Both paths implement identical algorithms with identical tie-breaking, so a
given path is fully deterministic; across paths results may differ by
floating-point rounding only.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    from numba import njit

    _NUMBA_OK = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _NUMBA_OK = False

USE_NUMBA = _NUMBA_OK and os.environ.get("IGBS_NUMBA", "1") != "0"


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def hist2d_np(x, y, ax, ay):
    flat = np.bincount(x * ay + y, minlength=ax * ay)
    return flat.reshape(ax, ay).astype(np.int64, copy=False)


def hist3d_np(x, y, z, ax, ay, az):
    flat = np.bincount((x * ay + y) * az + z, minlength=ax * ay * az)
    return flat.reshape(ax, ay, az).astype(np.int64, copy=False)


def rbf_kernel_np(a, b, gamma):
    # ||a-b||^2 = |a|^2 + |b|^2 - 2 a.b ; clip guards tiny negative round-off
    sq = (
        np.einsum("ij,ij->i", a, a)[:, None]
        + np.einsum("ij,ij->i", b, b)[None, :]
        - 2.0 * (a @ b.T)
    )
    np.clip(sq, 0.0, None, out=sq)
    return np.exp(-gamma * sq)


def nn1_index_np(train, test):
    out = np.empty(test.shape[0], dtype=np.int64)
    # chunk test rows so the distance block stays small
    step = max(1, 4_000_000 // max(train.shape[0] * train.shape[1], 1))
    for s in range(0, test.shape[0], step):
        block = test[s : s + step]
        d = ((block[:, None, :] - train[None, :, :]) ** 2).sum(axis=2)
        out[s : s + step] = d.argmin(axis=1)
    return out


def smo_solve_np(kernel, y, c, tol, max_iter):
    n = y.shape[0]
    alpha = np.zeros(n)
    u = np.zeros(n)  # decision values without bias
    pos = y > 0.0
    m_val = 0.0
    big_m = 0.0
    it = 0
    while it < max_iter:
        g = y - u
        in_up = np.where(pos, alpha < c, alpha > 0.0)
        in_low = np.where(pos, alpha > 0.0, alpha < c)
        if not in_up.any() or not in_low.any():
            break
        gi = np.where(in_up, g, -np.inf)
        gj = np.where(in_low, g, np.inf)
        i = int(np.argmax(gi))
        j = int(np.argmin(gj))
        m_val = gi[i]
        big_m = gj[j]
        if m_val - big_m <= tol:
            break
        eta = kernel[i, i] + kernel[j, j] - 2.0 * kernel[i, j]
        if eta <= 0.0:
            eta = 1e-12
        # move along alpha_j += d, alpha_i -= y_i y_j d
        d = -y[j] * (m_val - big_m) / eta
        s = y[i] * y[j]
        lo = max(-alpha[j], alpha[i] - c if s > 0 else -alpha[i])
        hi = min(c - alpha[j], alpha[i] if s > 0 else c - alpha[i])
        d = min(max(d, lo), hi)
        if d == 0.0:
            break
        alpha[j] += d
        alpha[i] -= s * d
        # snap round-off at the box edges so duals stay within [0, C] exactly
        alpha[j] = min(max(alpha[j], 0.0), c)
        alpha[i] = min(max(alpha[i], 0.0), c)
        u += (-s * d) * y[i] * kernel[i] + d * y[j] * kernel[j]
        it += 1
    bias = 0.5 * (m_val + big_m)
    return alpha, bias, it, m_val - big_m


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if _NUMBA_OK:

    @njit(cache=True)
    def hist2d_nb(x, y, ax, ay):
        h = np.zeros((ax, ay), dtype=np.int64)
        for t in range(x.shape[0]):
            h[x[t], y[t]] += 1
        return h

    @njit(cache=True)
    def hist3d_nb(x, y, z, ax, ay, az):
        h = np.zeros((ax, ay, az), dtype=np.int64)
        for t in range(x.shape[0]):
            h[x[t], y[t], z[t]] += 1
        return h

    @njit(cache=True)
    def rbf_kernel_nb(a, b, gamma):
        na, nd = a.shape
        nb_ = b.shape[0]
        out = np.empty((na, nb_))
        for i in range(na):
            for j in range(nb_):
                sq = 0.0
                for d in range(nd):
                    diff = a[i, d] - b[j, d]
                    sq += diff * diff
                out[i, j] = math.exp(-gamma * sq)
        return out

    @njit(cache=True)
    def nn1_index_nb(train, test):
        out = np.empty(test.shape[0], dtype=np.int64)
        for t in range(test.shape[0]):
            best = np.inf
            best_i = 0
            for r in range(train.shape[0]):
                sq = 0.0
                for d in range(train.shape[1]):
                    diff = test[t, d] - train[r, d]
                    sq += diff * diff
                if sq < best:
                    best = sq
                    best_i = r
            out[t] = best_i
        return out

    @njit(cache=True)
    def smo_solve_nb(kernel, y, c, tol, max_iter):
        n = y.shape[0]
        alpha = np.zeros(n)
        u = np.zeros(n)
        m_val = 0.0
        big_m = 0.0
        it = 0
        while it < max_iter:
            m_val = -np.inf
            big_m = np.inf
            i = -1
            j = -1
            for t in range(n):
                g = y[t] - u[t]
                if (y[t] > 0.0 and alpha[t] < c) or (y[t] < 0.0 and alpha[t] > 0.0):
                    if g > m_val:
                        m_val = g
                        i = t
                if (y[t] > 0.0 and alpha[t] > 0.0) or (y[t] < 0.0 and alpha[t] < c):
                    if g < big_m:
                        big_m = g
                        j = t
            if i < 0 or j < 0:
                break
            if m_val - big_m <= tol:
                break
            eta = kernel[i, i] + kernel[j, j] - 2.0 * kernel[i, j]
            if eta <= 0.0:
                eta = 1e-12
            d = -y[j] * (m_val - big_m) / eta
            s = y[i] * y[j]
            if s > 0:
                lo = max(-alpha[j], alpha[i] - c)
                hi = min(c - alpha[j], alpha[i])
            else:
                lo = max(-alpha[j], -alpha[i])
                hi = min(c - alpha[j], c - alpha[i])
            if d < lo:
                d = lo
            elif d > hi:
                d = hi
            if d == 0.0:
                break
            alpha[j] += d
            alpha[i] -= s * d
            alpha[j] = min(max(alpha[j], 0.0), c)
            alpha[i] = min(max(alpha[i], 0.0), c)
            for t in range(n):
                u[t] += (-s * d) * y[i] * kernel[i, t] + d * y[j] * kernel[j, t]
            it += 1
        bias = 0.5 * (m_val + big_m)
        return alpha, bias, it, m_val - big_m


NUMPY_IMPL = {
    "hist2d": hist2d_np,
    "hist3d": hist3d_np,
    "rbf_kernel": rbf_kernel_np,
    "nn1_index": nn1_index_np,
    "smo_solve": smo_solve_np,
}

NUMBA_IMPL = (
    {
        "hist2d": hist2d_nb,
        "hist3d": hist3d_nb,
        "rbf_kernel": rbf_kernel_nb,
        "nn1_index": nn1_index_nb,
        "smo_solve": smo_solve_nb,
    }
    if _NUMBA_OK
    else None
)

_ACTIVE = NUMBA_IMPL if USE_NUMBA else NUMPY_IMPL

hist2d = _ACTIVE["hist2d"]
hist3d = _ACTIVE["hist3d"]
nn1_index = _ACTIVE["nn1_index"]
smo_solve = _ACTIVE["smo_solve"]
# the BLAS route wins for the kernel matrix at every size we care about
# (see benchmarks/bench_kernels.py), so both paths share it
rbf_kernel = rbf_kernel_np
