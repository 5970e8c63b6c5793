"""Pure-numpy twin of the compiled kernels (same operation order, same bits)."""

import numpy as np


def _kahan_step(s, c, term):
    y = term - c
    t = s + y
    c[...] = (t - s) - y
    s[...] = t


def conv_window_1d(f, g, d, out_len):
    """out[i] = sum_jj f[i + d - jj] * g[jj] over valid jj, ascending."""
    lf, lg = f.shape[0], g.shape[0]
    s = np.zeros(out_len, dtype=np.float64)
    c = np.zeros(out_len, dtype=np.float64)
    for jj in range(lg):
        lo = max(0, jj - d)
        hi = min(out_len, jj - d + lf)
        if lo >= hi:
            continue
        _kahan_step(s[lo:hi], c[lo:hi], f[lo + d - jj:hi + d - jj] * g[jj])
    return s


def conv_window_2d(f, g, d0, d1, out0, out1):
    lf0, lf1 = f.shape
    lg0, lg1 = g.shape
    s = np.zeros((out0, out1), dtype=np.float64)
    c = np.zeros((out0, out1), dtype=np.float64)
    for j0 in range(lg0):
        lo0 = max(0, j0 - d0)
        hi0 = min(out0, j0 - d0 + lf0)
        if lo0 >= hi0:
            continue
        for j1 in range(lg1):
            lo1 = max(0, j1 - d1)
            hi1 = min(out1, j1 - d1 + lf1)
            if lo1 >= hi1:
                continue
            term = f[lo0 + d0 - j0:hi0 + d0 - j0, lo1 + d1 - j1:hi1 + d1 - j1] * g[j0, j1]
            _kahan_step(s[lo0:hi0, lo1:hi1], c[lo0:hi0, lo1:hi1], term)
    return s
