"""Discrete fractional integral (Riesz potential) and its extremal probes."""

from __future__ import annotations

import math
import statistics
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from .config import get_config
from .errors import BudgetError, DegenerateInput, DomainError
from .families import SHELL_COUNT, _anchor, log_tail
from .fitting import classify, fit_growth, strictly_increasing
from .index import FracTuple, format_rational, gauge_plus, parse_rational
from .lattice import (
    LatticeFunction,
    bracket_power,
    cube_coords,
    sq_norm,
    weighted_norm,
    window_values,
)
from .regions import frac_discrete_holds
from .report import ExperimentReport


def default_out_box(f: LatticeFunction) -> Tuple[tuple, tuple]:
    """Twice the support box: each side grows by ceil(L/2) for an axis of length L."""
    lo, shape = [], []
    for l, L in zip(f.lo, f.shape):
        pad = -(-L // 2)
        lo.append(l - pad)
        shape.append(L + 2 * pad)
    return tuple(lo), tuple(shape)


def riesz_kernel(lo: Sequence[int], shape: Sequence[int], lam: float, n: int) -> np.ndarray:
    """|m|^(lam - n) = exp((lam - n) ln|m|) on a box of offsets, 0 at m = 0."""
    axes = [np.arange(l, l + s, dtype=np.int64) for l, s in zip(lo, shape)]
    coords = np.meshgrid(*axes, indexing="ij") if n > 1 else axes
    sq = sq_norm(coords).astype(np.float64)
    with np.errstate(divide="ignore"):
        k = np.exp((lam - n) * 0.5 * np.log(sq))
    k[sq == 0] = 0.0
    return k


def apply_frac(f: LatticeFunction, lam, n: Optional[int] = None, out_box=None,
               method: Optional[str] = None, config=None, backend: Optional[str] = None) -> LatticeFunction:
    """(I_lam f)(k) = sum_{j != k} f(j) / |k - j|^(n - lam) for k in ``out_box``.

    ``out_box`` is ``(lo, shape)``; it defaults to twice the support box of f.
    """
    cfg = get_config(config)
    n = f.n if n is None else int(n)
    if n != f.n:
        raise DomainError("dimension does not match the lattice function")
    lamf = float(parse_rational(lam)) if not isinstance(lam, float) else lam
    if not (0 < lamf < n):
        raise DomainError(f"order must satisfy 0 < lambda < n, got {lam}")
    if f.is_empty:
        lo, shape = out_box if out_box is not None else ((0,) * n, (0,) * n)
        return LatticeFunction(np.zeros(shape), lo)
    if out_box is None:
        out_box = default_out_box(f)
    olo, oshape = tuple(int(x) for x in out_box[0]), tuple(int(x) for x in out_box[1])
    out_cells = int(np.prod(oshape))
    klo = tuple(ol - (fl + fs - 1) for ol, fl, fs in zip(olo, f.lo, f.shape))
    kshape = tuple(os_ + fs - 1 for os_, fs in zip(oshape, f.shape))
    if int(np.prod(kshape)) > cfg["max_cells"] or out_cells > cfg["max_cells"]:
        raise BudgetError("Riesz kernel table exceeds max_cells")
    method = method or cfg["conv_method"]
    work = out_cells * f.size
    if method == "auto":
        method = "direct" if work <= cfg["direct_work_limit"] else "fft"
    if method == "direct" and work > cfg["max_frac_work"]:
        raise BudgetError(f"|out_box|*|supp f| = {work} exceeds max_frac_work")
    kern = riesz_kernel(klo, kshape, lamf, n)
    d = tuple(fs - 1 for fs in f.shape)
    vals = window_values(kern, np.ascontiguousarray(f.values), d, oshape, method, cfg, backend)
    return LatticeFunction(vals, olo)


def frac_ratio(f: LatticeFunction, g: FracTuple, out_box=None, method=None, config=None) -> float:
    """||I_lam f||_{l(q,s)} over ``out_box`` divided by ||f||_{l(p,t)}."""
    den = weighted_norm(f, g.p, g.t)
    if den == 0.0:
        raise DegenerateInput("||f||_{l(p,t)} vanishes")
    return weighted_norm(apply_frac(f, g.lam, g.n, out_box, method, config), g.q, g.s) / den


def flat_sum(N: int, lam: float, n: int = 1) -> float:
    """sum over 1 <= |j| <= N of |j|^(lam - n), j in the sup-norm cube."""
    coords = cube_coords(N, n)
    sq = sq_norm(coords).astype(np.float64)
    sq = sq[sq > 0]
    return math.fsum(np.exp((lam - n) * 0.5 * np.log(sq)).tolist())


def frac_flat_family(N: int, n: int = 1) -> LatticeFunction:
    """f_N = 1 on |k| <= 2N."""
    if N < 1:
        raise DomainError("flat family needs N >= 1")
    return LatticeFunction.cube_indicator(2 * N, n)


def default_frac_eps(p_recip: Fraction, cap: float = 0.05) -> float:
    """eps = -1/p - delta with delta = min(cap, (1 - 1/p)/4)."""
    delta = min(cap, float(1 - p_recip) / 4.0)
    return -float(p_recip) - delta


def check_frac_eps(p_recip: Fraction, eps: float) -> None:
    if p_recip >= 1:
        raise DomainError("the anchored family needs p > 1")
    if p_recip > 0 and not (eps / float(p_recip) < -1):
        raise DomainError(f"need p*eps < -1, got eps = {eps}")
    if eps < -1:
        raise DomainError(f"need eps >= -1, got eps = {eps}")


def frac_log_family(N, g: FracTuple, kind: str = "f", eps: Optional[float] = None,
                    radius_factor: float = 8, eps_cap: float = 0.05):
    """Log families: ``kind='f'`` gives <k>^(-t-n/p) on |k| <= N; ``kind='g'`` the anchored g_N.

    For ``g`` the return value is ``(g_N, info)`` with the truncation radius and a
    bound on the truncated tail of the p-th power sum of ||g_N||_{l(p,t)}.
    """
    n = g.n
    if kind == "f":
        N = int(N)
        if N < 2:
            raise DomainError("f_N needs N >= 2")
        sq = sq_norm(cube_coords(N, n))
        return LatticeFunction(bracket_power(sq, -float(g.t + n * g.p.recip)), (-N,) * n)
    if kind != "g":
        raise DomainError("kind must be 'f' or 'g'")
    e = default_frac_eps(g.p.recip, eps_cap) if eps is None else float(eps)
    check_frac_eps(g.p.recip, e)
    anchor = _anchor(N, n)
    normN = math.sqrt(sum(x * x for x in anchor))
    if normN < 1:
        raise DomainError("anchor must be nonzero")
    R = int(math.ceil(radius_factor * normN))
    coords = cube_coords(R, n)
    sq = sq_norm(coords)
    sqd = sq_norm(tuple(c - a for c, a in zip(coords, anchor)))
    lbd = 0.5 * np.log1p(sqd.astype(np.float64))
    lamf = float(g.lam)
    vals = bracket_power(sq, -float(g.t)) * bracket_power(sqd, -lamf) * np.power(1.0 + lbd, e)
    fn = LatticeFunction(vals, (-R,) * n)
    info = {"eps": e, "radius": R, "tail": None}
    if not g.p.is_inf:
        pf = float(g.p.q)
        rad = max(1.0, R - max(abs(x) for x in anchor))
        a = lamf * pf
        if abs(a - n) < 1e-12:
            info["tail"] = log_tail(e * pf, rad, n)
        elif a > n:
            info["tail"] = SHELL_COUNT[n] * rad ** (n - a) / (a - n)
        else:
            info["tail"] = math.inf
    return fn, info


def alpha_frac(g: FracTuple) -> Fraction:
    """Predicted flat-family exponent n [lam/n + (1/q+s/n)v0 - (1/p+t/n)v0]."""
    n = g.n
    return n * (g.lam / n + gauge_plus(g.q, g.s, n) - gauge_plus(g.p, g.t, n))


def frac_growth_probe(g: FracTuple, family: str = "flat", schedule: Optional[Sequence[int]] = None,
                      config=None, method: Optional[str] = None, c2_demo: bool = False) -> ExperimentReport:
    """Ratios ||I_lam f_N|| / ||f_N|| for a fractional-integral family, with a fitted exponent."""
    cfg = get_config(config)
    if family not in ("flat", "log-f", "log-g"):
        raise DomainError(f"unknown family {family!r}")
    if schedule is None:
        schedule = cfg["schedule_n1"] if g.n == 1 else cfg["schedule_n2"]
    schedule = [int(x) for x in schedule]
    if len(schedule) < 4 or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise DomainError("schedule must be strictly increasing with at least 4 points")
    extras = {"alpha_frac": format_rational(alpha_frac(g))}
    ratios, tail = [], None
    if family == "flat":
        for N in schedule:
            ratios.append(frac_ratio(frac_flat_family(N, g.n), g, method=method, config=cfg))
        kind = "poly-in-N"
    elif family == "log-f":
        norms = []
        for N in schedule:
            f = frac_log_family(N, g, "f")
            norms.append(weighted_norm(f, g.p, g.t))
            ratios.append(frac_ratio(f, g, method=method, config=cfg))
        extras["f_norms"] = norms
        kind = "poly-in-lnN"
    else:
        norms, tails = [], []
        for N in schedule:
            f, info = frac_log_family(N, g, "g", radius_factor=cfg["log_radius_factor"],
                                      eps_cap=cfg["eps_delta_cap"])
            nrm = weighted_norm(f, g.p, g.t)
            norms.append(nrm)
            if info["tail"] is not None and not g.p.is_inf:
                pf = float(g.p.q)
                tails.append((1.0 + info["tail"] / nrm ** pf) ** (1.0 / pf) - 1.0)
            ratios.append(frac_ratio(f, g, method=method, config=cfg))
            extras["eps"] = info["eps"]
        med = statistics.median(norms)
        extras["g_norms"] = norms
        extras["g_norm_median"] = med
        extras["g_norm_max_rel_dev"] = max(abs(x - med) / med for x in norms)
        extras["predicted_log_exponent"] = 1.0 + extras["eps"]
        tail = max(tails) if tails else None
        kind = "poly-in-lnN"
    slope = fit_growth(schedule, ratios, kind)
    extras["strictly_increasing"] = strictly_increasing(ratios)
    if c2_demo:
        extras["c2_demo"] = {"decider_holds": frac_discrete_holds(g).holds,
                             "note": "double-endpoint candidate; the ratio is driven past any bound"}
    return ExperimentReport("riesz", g.to_dict(), family, schedule, ratios, slope, kind,
                            classify(slope, cfg), cfg, tail, extras)
