"""Finitely supported nonnegative functions on Z^n (n = 1, 2), norms and convolution."""

from __future__ import annotations

import math
from typing import Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .config import get_config
from .errors import BudgetError, DomainError
from .index import exponent, parse_rational


class LatticeFunction:
    """Nonnegative values on the integer box ``lo + [0, shape)``.

    The box is trimmed to the smallest one enclosing the nonzero values; an
    all-zero function has an empty box. Values are stored read-only.
    """

    __slots__ = ("n", "lo", "values")

    def __init__(self, values, lo: Optional[Sequence[int]] = None, trim: bool = True):
        arr = np.array(values, dtype=np.float64, copy=True)
        if arr.ndim not in (1, 2):
            raise DomainError("only 1-D and 2-D lattices are supported")
        if lo is None:
            lo = (0,) * arr.ndim
        lo = tuple(int(x) for x in np.atleast_1d(lo))
        if len(lo) != arr.ndim:
            raise DomainError("lo must have one entry per axis")
        if not np.all(np.isfinite(arr)):
            raise DomainError("lattice values must be finite")
        if np.any(arr < 0):
            raise DomainError("lattice functions are nonnegative")
        if trim:
            arr, lo = _trim(arr, lo)
        arr.setflags(write=False)
        self.n = arr.ndim
        self.lo = lo
        self.values = arr

    # construction helpers
    @classmethod
    def delta(cls, k: Sequence[int] = (0,), value: float = 1.0) -> "LatticeFunction":
        k = tuple(int(x) for x in np.atleast_1d(k))
        return cls(np.full((1,) * len(k), float(value)), k)

    @classmethod
    def cube_indicator(cls, radius: int, n: int, center: Sequence[int] = None) -> "LatticeFunction":
        """Indicator of the sup-norm cube |k - center| <= radius."""
        center = (0,) * n if center is None else tuple(center)
        side = 2 * int(radius) + 1
        return cls(np.ones((side,) * n), tuple(c - radius for c in center))

    @classmethod
    def from_function(cls, fn, radius: int, n: int) -> "LatticeFunction":
        """Evaluate ``fn(sq_norm, coords)`` on the cube |k| <= radius; sq_norm is exact |k|^2."""
        coords = cube_coords(radius, n)
        return cls(fn(sq_norm(coords), coords), (-radius,) * n)

    # geometry
    @property
    def shape(self) -> Tuple[int, ...]:
        return self.values.shape

    @property
    def hi(self) -> Tuple[int, ...]:
        return tuple(l + s - 1 for l, s in zip(self.lo, self.shape))

    @property
    def size(self) -> int:
        return int(self.values.size)

    @property
    def is_empty(self) -> bool:
        return self.values.size == 0

    def coords(self) -> Tuple[np.ndarray, ...]:
        """Integer coordinate grids (int64) matching ``values``."""
        axes = [np.arange(l, l + s, dtype=np.int64) for l, s in zip(self.lo, self.shape)]
        return tuple(np.meshgrid(*axes, indexing="ij")) if self.n > 1 else (axes[0],)

    def sq_norms(self) -> np.ndarray:
        return sq_norm(self.coords())

    def __call__(self, k) -> float:
        k = tuple(int(x) for x in np.atleast_1d(k))
        idx = tuple(a - l for a, l in zip(k, self.lo))
        if any(i < 0 or i >= s for i, s in zip(idx, self.shape)):
            return 0.0
        return float(self.values[idx])

    def scaled(self, c: float) -> "LatticeFunction":
        return LatticeFunction(self.values * float(c), self.lo)

    def restricted(self, lo: Sequence[int], shape: Sequence[int]) -> "LatticeFunction":
        return LatticeFunction(embed(self, lo, shape), lo)

    def identical(self, other: "LatticeFunction") -> bool:
        """Bit-for-bit equality of support box and values."""
        return (self.n == other.n and self.lo == other.lo and self.shape == other.shape
                and self.values.tobytes() == other.values.tobytes())

    def __repr__(self) -> str:
        return f"LatticeFunction(n={self.n}, lo={self.lo}, shape={self.shape})"


def _trim(arr: np.ndarray, lo: tuple):
    nz = np.nonzero(arr)
    if nz[0].size == 0:
        return np.zeros((0,) * arr.ndim), (0,) * arr.ndim
    sl, new_lo = [], []
    for ax in range(arr.ndim):
        a, b = int(nz[ax].min()), int(nz[ax].max()) + 1
        sl.append(slice(a, b))
        new_lo.append(lo[ax] + a)
    return np.ascontiguousarray(arr[tuple(sl)]), tuple(new_lo)


def cube_coords(radius: int, n: int) -> Tuple[np.ndarray, ...]:
    ax = np.arange(-int(radius), int(radius) + 1, dtype=np.int64)
    return tuple(np.meshgrid(*([ax] * n), indexing="ij")) if n > 1 else (ax,)


def sq_norm(coords: Sequence[np.ndarray]) -> np.ndarray:
    """Exact integer |k|^2 (int64)."""
    out = np.zeros_like(coords[0], dtype=np.int64)
    for c in coords:
        out = out + c.astype(np.int64) * c.astype(np.int64)
    return out


def bracket_power(sq: np.ndarray, a: float) -> np.ndarray:
    """<k>^a = (1 + |k|^2)^(a/2), from an exact integer |k|^2."""
    return np.power(1.0 + sq.astype(np.float64), 0.5 * a)


def embed(f: LatticeFunction, lo: Sequence[int], shape: Sequence[int]) -> np.ndarray:
    """Dense copy of ``f`` on the box ``lo + [0, shape)`` (zero outside supp f)."""
    out = np.zeros(tuple(int(s) for s in shape), dtype=np.float64)
    if f.is_empty:
        return out
    src, dst = [], []
    for ax in range(f.n):
        a = max(f.lo[ax], lo[ax])
        b = min(f.lo[ax] + f.shape[ax], lo[ax] + shape[ax])
        if a >= b:
            return out
        src.append(slice(a - f.lo[ax], b - f.lo[ax]))
        dst.append(slice(a - lo[ax], b - lo[ax]))
    out[tuple(dst)] = f.values[tuple(src)]
    return out


# ------------------------------------------------------------------ norms

def power_sum(terms: np.ndarray) -> float:
    """Correctly rounded sum (order independent, hence deterministic)."""
    return math.fsum(np.ravel(terms).tolist())


def weighted_norm(f: LatticeFunction, p, s) -> float:
    """||f||_{l(p,s)} = (sum f^p <k>^{ps})^{1/p}; sup f <k>^s when p = inf."""
    p = exponent(p)
    s = float(parse_rational(s)) if not isinstance(s, float) else s
    if f.is_empty:
        return 0.0
    sq = f.sq_norms()
    vals = f.values
    if p.is_inf:
        return float(np.max(vals * bracket_power(sq, s)))
    fmax = float(np.max(vals))
    if fmax == 0.0:
        return 0.0
    pf = float(p.q)
    terms = (vals / fmax) ** pf * bracket_power(sq, pf * s)
    return fmax * power_sum(terms) ** (1.0 / pf)


# ------------------------------------------------------------------ convolution

def _order_key(f: LatticeFunction):
    return (f.size, f.lo, f.shape, f.values.tobytes())


def convolve(f: LatticeFunction, g: LatticeFunction, method: Optional[str] = None,
             config=None, backend: Optional[str] = None) -> LatticeFunction:
    """Full lattice convolution (f * g)(k) = sum_j f(k - j) g(j) on the Minkowski-sum box.

    ``method`` is ``direct``, ``fft`` or ``auto``. The operands are put in a
    canonical order first, so the direct path is commutative bit for bit.
    """
    cfg = get_config(config)
    if f.n != g.n:
        raise DomainError("operands live on lattices of different dimension")
    if f.is_empty or g.is_empty:
        return LatticeFunction(np.zeros((0,) * f.n), (0,) * f.n)
    if _order_key(g) > _order_key(f):
        f, g = g, f
    shape = tuple(a + b - 1 for a, b in zip(f.shape, g.shape))
    lo = tuple(a + b for a, b in zip(f.lo, g.lo))
    cells = int(np.prod(shape))
    if cells > cfg["max_cells"]:
        raise BudgetError(f"output box of {cells} cells exceeds max_cells = {cfg['max_cells']}")
    d = (0,) * f.n
    vals = window_values(f.values, g.values, d, shape, method or cfg["conv_method"], cfg, backend)
    return LatticeFunction(vals, lo)


def window_values(fv, gv, d, out_shape, method: str, cfg, backend=None) -> np.ndarray:
    """Dispatch a windowed convolution to the direct or FFT kernel."""
    if method == "auto":
        method = "direct" if fv.size * gv.size <= cfg["direct_work_limit"] else "fft"
    if method == "direct":
        return kernels.direct_window(fv, gv, d, out_shape, backend)
    if method == "fft":
        return kernels.fft_window(fv, gv, d, out_shape)
    raise DomainError(f"unknown convolution method {method!r}")
