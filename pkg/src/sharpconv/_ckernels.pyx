# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled direct-convolution kernels.

Each output cell is a Kahan-compensated sum over the loop operand ``g`` in
row-major index order, skipping index pairs that fall outside ``f``. The
pure-Python twin in ``_kernels_py`` performs the same IEEE operations in the
same order, so both backends agree bit for bit (built with -ffp-contract=off).
"""

import numpy as np


def conv_window_1d(const double[::1] f, const double[::1] g, Py_ssize_t d, Py_ssize_t out_len):
    cdef Py_ssize_t lf = f.shape[0], lg = g.shape[0]
    cdef Py_ssize_t i, jj, a, jlo, jhi
    cdef double s, c, y, t
    out = np.zeros(out_len, dtype=np.float64)
    cdef double[::1] o = out
    for i in range(out_len):
        a = i + d
        jlo = a - lf + 1
        if jlo < 0:
            jlo = 0
        jhi = a
        if jhi > lg - 1:
            jhi = lg - 1
        s = 0.0
        c = 0.0
        for jj in range(jlo, jhi + 1):
            y = f[a - jj] * g[jj] - c
            t = s + y
            c = (t - s) - y
            s = t
        o[i] = s
    return out


def conv_window_2d(const double[:, ::1] f, const double[:, ::1] g,
                   Py_ssize_t d0, Py_ssize_t d1, Py_ssize_t out0, Py_ssize_t out1):
    cdef Py_ssize_t lf0 = f.shape[0], lf1 = f.shape[1]
    cdef Py_ssize_t lg0 = g.shape[0], lg1 = g.shape[1]
    cdef Py_ssize_t i0, i1, a0, a1, j0, j1, lo0, hi0, lo1, hi1
    cdef double s, c, y, t
    out = np.zeros((out0, out1), dtype=np.float64)
    cdef double[:, ::1] o = out
    for i0 in range(out0):
        a0 = i0 + d0
        lo0 = a0 - lf0 + 1
        if lo0 < 0:
            lo0 = 0
        hi0 = a0
        if hi0 > lg0 - 1:
            hi0 = lg0 - 1
        for i1 in range(out1):
            a1 = i1 + d1
            lo1 = a1 - lf1 + 1
            if lo1 < 0:
                lo1 = 0
            hi1 = a1
            if hi1 > lg1 - 1:
                hi1 = lg1 - 1
            s = 0.0
            c = 0.0
            for j0 in range(lo0, hi0 + 1):
                for j1 in range(lo1, hi1 + 1):
                    y = f[a0 - j0, a1 - j1] * g[j0, j1] - c
                    t = s + y
                    c = (t - s) - y
                    s = t
            o[i0, i1] = s
    return out
