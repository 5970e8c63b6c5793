"""Backend selection for the hot kernels.

The compiled extension is used when importable. Setting the environment
variable ``SHARPCONV_BACKEND=python`` forces the numpy fallback, and
``SHARPCONV_BACKEND=cython`` makes a missing extension an import error.

Array-level convention: ``out[i] = sum_j f[i + d - j] * g[j]`` for the output
window of shape ``out_shape``; ``d`` is the per-axis offset between output and
full-convolution indices.
"""

from __future__ import annotations

import os

import numpy as np
from scipy.signal import fftconvolve

from . import _kernels_py

_requested = os.environ.get("SHARPCONV_BACKEND", "").strip().lower()
_compiled = None
if _requested != "python":
    try:
        from . import _ckernels as _compiled
    except ImportError:
        if _requested == "cython":
            raise
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def available_backends() -> tuple:
    return ("cython", "python") if _compiled is not None else ("python",)


def _impl(backend):
    name = backend or BACKEND
    if name == "python":
        return _kernels_py
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def direct_window(f: np.ndarray, g: np.ndarray, d, out_shape, backend=None) -> np.ndarray:
    """Direct Kahan-compensated windowed convolution; ``g`` is the loop operand."""
    f = np.ascontiguousarray(f, dtype=np.float64)
    g = np.ascontiguousarray(g, dtype=np.float64)
    impl = _impl(backend)
    if f.ndim == 1:
        return impl.conv_window_1d(f, g, int(d[0]), int(out_shape[0]))
    if f.ndim == 2:
        return impl.conv_window_2d(f, g, int(d[0]), int(d[1]), int(out_shape[0]), int(out_shape[1]))
    raise ValueError("only 1-D and 2-D lattices are supported")


def fft_window(f: np.ndarray, g: np.ndarray, d, out_shape) -> np.ndarray:
    """FFT convolution cut to the same window; round-off negatives are clipped to 0."""
    full = fftconvolve(np.asarray(f, dtype=np.float64), np.asarray(g, dtype=np.float64), mode="full")
    np.maximum(full, 0.0, out=full)
    out = np.zeros(tuple(int(x) for x in out_shape), dtype=np.float64)
    src, dst = [], []
    for ax in range(full.ndim):
        lo = int(d[ax])
        a = max(lo, 0)
        b = min(lo + int(out_shape[ax]), full.shape[ax])
        if a >= b:
            return out
        src.append(slice(a, b))
        dst.append(slice(a - lo, b - lo))
    out[tuple(dst)] = full[tuple(src)]
    return out
