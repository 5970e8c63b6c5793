"""Integral capability of weights: uniform-in-k size of the l^t_j (or L^t_y) norm of
<k>^s / (<k-j>^s1 <j>^s2), and its power-weight analogue."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from .config import get_config
from .errors import DomainError, GridError
from .families import SHELL_COUNT
from .fitting import BOUNDED, DIVERGING, classify, lsq_slope, upper_half
from .index import exponent, format_rational, parse_rational
from .lattice import bracket_power, cube_coords, power_sum, sq_norm
from .regions import capability_t_set
from .report import ExperimentReport


def _check_weights(s, s1, s2):
    s, s1, s2 = parse_rational(s), parse_rational(s1), parse_rational(s2)
    if not (s > 0 and s <= s1 and s <= s2):
        raise DomainError(f"need 0 < s <= s1, s2; got s={s}, s1={s1}, s2={s2}")
    return s, s1, s2


def _lt_norm(w: np.ndarray, t) -> float:
    if t.is_inf:
        return float(np.max(w))
    tf = float(t.q)
    wmax = float(np.max(w))
    return wmax * power_sum((w / wmax) ** tf) ** (1.0 / tf)


def capability_norm(k, s, s1, s2, t, R: int) -> Tuple[float, float]:
    """Truncated norm over |j|_inf <= R and an additive bound on the omitted tail.

    For |j|_inf > R >= 4(|k| + 1) one has <k - j> >= (3/4) <j>, so each omitted term
    is at most <k>^s (4/3)^s1 <j>^-(s1+s2); the shell sums are compared with integrals.
    The full norm lies in [norm, norm + tail]; tail is inf when the sum diverges.
    """
    s, s1, s2 = _check_weights(s, s1, s2)
    t = exponent(t)
    k = tuple(int(x) for x in np.atleast_1d(k))
    n = len(k)
    if n not in (1, 2):
        raise DomainError("capability norms support n = 1, 2")
    knorm = math.sqrt(sum(x * x for x in k))
    if R < 4 * (knorm + 1):
        raise DomainError(f"radius R = {R} must be >= 4(|k|+1) = {4 * (knorm + 1)}")
    coords = cube_coords(R, n)
    sq = sq_norm(coords)
    sqd = sq_norm(tuple(c - a for c, a in zip(coords, k)))
    ksq = sum(x * x for x in k)
    w = (math.pow(1.0 + ksq, 0.5 * float(s)) * bracket_power(sqd, -float(s1))
         * bracket_power(sq, -float(s2)))
    norm = _lt_norm(w, t)
    pref = math.pow(1.0 + ksq, 0.5 * float(s)) * (4.0 / 3.0) ** float(s1)
    sig = float(s1 + s2)
    if t.is_inf:
        return norm, pref * math.pow(1.0 + R * R, -0.5 * sig)
    tf = float(t.q)
    sigma = sig * tf
    if sigma <= n:
        return norm, math.inf
    tail_pow = pref ** tf * SHELL_COUNT[n] * R ** (n - sigma) / (sigma - n)
    full = (norm ** tf + tail_pow) ** (1.0 / tf)
    return norm, full - norm


def _classify_capability(schedule, values, t, cfg) -> Tuple[str, dict]:
    """Classify growth from the increments D_i of V_i^t along the schedule.

    Log divergence gives increments that stay flat in K, a convergent norm gives
    increments decaying like a power of K, and power growth gives growing ones.
    The increment exponent is the slope of ln D against ln K over the top third of
    the increments, where sub-leading regions have settled.
    """
    p = 1.0 if t.is_inf else float(t.q)
    w = [v ** p for v in values]
    xs, ws = upper_half(schedule), upper_half(w)
    lx = [math.log(x) for x in upper_half(schedule)]
    ly = [math.log(v) for v in upper_half(values)]
    info = {"power_slope": lsq_slope(lx, ly), "log_fit": False}
    if all(x > 1 for x in xs):
        info["loglog_slope"] = lsq_slope([math.log(math.log(x)) for x in xs], ly)
    incs = [b - a for a, b in zip(ws, ws[1:])]
    keep = max(3, -(-len(incs) // 3))
    incs, kx = incs[-keep:], xs[1:][-keep:]
    if len(incs) < 2 or any(d <= 0 for d in incs):
        # non-increasing somewhere in the upper half: nothing is growing
        if all(d <= 0 for d in incs):
            info["increment_exponent"] = None
            return BOUNDED, info
        slope = info["power_slope"]
        verdict = classify(slope, cfg)
        return verdict, info
    inc_slope = lsq_slope([math.log(x) for x in kx], [math.log(d) for d in incs])
    info["increment_exponent"] = inc_slope
    band = cfg["capability_flat_band"]
    if inc_slope < -band:
        return BOUNDED, info
    if inc_slope <= band:
        info["log_fit"] = True
    return DIVERGING, info


def capability_sup_probe(s, s1, s2, t, n: int = 1, K_schedule: Optional[Sequence[int]] = None,
                         config=None, radius_factor: int = 8) -> ExperimentReport:
    """Evaluate the capability norm at k = (K, 0) along a schedule and classify its growth."""
    cfg = get_config(config)
    s, s1, s2 = _check_weights(s, s1, s2)
    t = exponent(t)
    if K_schedule is None:
        K_schedule = cfg["capability_schedule"] if n == 1 else cfg["capability_schedule_n2"]
    sched = [int(x) for x in K_schedule]
    if len(sched) < 4 or any(b <= a for a, b in zip(sched, sched[1:])):
        raise DomainError("K schedule must be strictly increasing with at least 4 points")
    uppers, lowers, tails = [], [], []
    for K in sched:
        k = (K,) + (0,) * (n - 1)
        R = radius_factor * (K + 1)
        norm, tail = capability_norm(k, s, s1, s2, t, R)
        lowers.append(norm)
        tails.append(tail)
        uppers.append(norm + tail if math.isfinite(tail) else norm)
    tset = capability_t_set(s, s1, s2, n)
    expected = BOUNDED if tset.contains(t) else DIVERGING
    if any(not math.isfinite(x) for x in tails):
        verdict, info = DIVERGING, {"infinite_norm": True, "log_fit": False}
        slope = lsq_slope([math.log(x) for x in upper_half(sched)],
                          [math.log(y) for y in upper_half(lowers)])
    else:
        verdict, info = _classify_capability(sched, uppers, t, cfg)
        slope = info["power_slope"]
    extras = dict(info, t_set=tset.to_dict(), expected=expected, agrees=(verdict == expected),
                  truncated_norms=lowers, tail_bounds=[t_ if math.isfinite(t_) else None for t_ in tails])
    tup = {"s": format_rational(s), "s1": format_rational(s1), "s2": format_rational(s2),
           "t": str(t), "n": n}
    ratios = uppers if not extras.get("infinite_norm") else lowers
    finite_tails = [x for x in tails if math.isfinite(x)]
    return ExperimentReport("capability", tup, "sup-k", sched, ratios, slope, "poly-in-N", verdict, cfg,
                            max(finite_tails) if finite_tails else None, extras)


# ---------------------------------------------------------------- continuous forms

def _bracket_estimate(x: float, s, s1, s2, t, h: float) -> Tuple[float, float]:
    """Midpoint rule for the L^t_y norm with <.> weights on |y| <= M = 8(|x|+1), n = 1."""
    M = 8.0 * (abs(x) + 1.0)
    cells = int(math.ceil(M / h))
    y = (np.arange(-cells, cells, dtype=np.float64) + 0.5) * h
    w = (math.pow(1.0 + x * x, 0.5 * float(s)) * np.power(1.0 + (x - y) ** 2, -0.5 * float(s1))
         * np.power(1.0 + y * y, -0.5 * float(s2)))
    Mt = cells * h
    pref = math.pow(1.0 + x * x, 0.5 * float(s)) * (4.0 / 3.0) ** float(s1)
    sig = float(s1 + s2)
    if t.is_inf:
        return float(np.max(w)), pref * Mt ** (-sig)
    tf = float(t.q)
    S = power_sum(w ** tf) * h
    sigma = sig * tf
    if sigma <= 1:
        return S ** (1 / tf), math.inf
    tail = 2.0 * pref ** tf * Mt ** (1.0 - sigma) / (sigma - 1.0)
    return S ** (1 / tf), (S + tail) ** (1 / tf) - S ** (1 / tf)


def _singular_piece(a: float, b: float, pole: float, expo: float, other) -> float:
    """Integral over [a, b] (one end at ``pole``) of |y - pole|^(-expo) * other(mid)."""
    mid = 0.5 * (a + b)
    L = b - a
    return other(mid) * L ** (1.0 - expo) / (1.0 - expo)


def _power_estimate(x: float, s, s1, s2, t, cells_per_x: int, levels: int) -> Tuple[float, float]:
    """L^t_y norm of |x|^s / (|x-y|^s1 |y|^s2) for n = 1 with dyadic refinement at 0 and x."""
    if cells_per_x < 4:
        raise GridError(f"|x|/h = {cells_per_x} < 4: grid too coarse")
    tf = float(t.q)
    s_, a1, a2 = float(s), float(s1), float(s2)
    h = x / cells_per_x
    M = 8.0 * x
    cells = int(math.ceil(M / h))
    px = math.pow(x, s_)

    def val(y):
        return px * np.abs(x - y) ** (-a1) * np.abs(y) ** (-a2)

    edges = np.arange(-cells, cells + 1, dtype=np.float64) * h
    mids = 0.5 * (edges[:-1] + edges[1:])
    touching = (np.abs(edges[:-1]) < 1e-15 * x) | (np.abs(edges[1:]) < 1e-15 * x) | \
               (np.abs(edges[:-1] - x) < 1e-12 * x) | (np.abs(edges[1:] - x) < 1e-12 * x)
    pieces = [val(mids[~touching]) ** tf * h]
    # refine each cell touching a singular point; the innermost piece is integrated exactly
    extra = []
    for lo_e, hi_e in zip(edges[:-1][touching], edges[1:][touching]):
        for pole, expo_w, other_w in ((0.0, a2, a1), (x, a1, a2)):
            if abs(lo_e - pole) < 1e-12 * x or abs(hi_e - pole) < 1e-12 * x:
                near = lo_e if abs(lo_e - pole) < 1e-12 * x else hi_e
                far = hi_e if near == lo_e else lo_e
                seg_far = far
                for _ in range(levels):
                    half = 0.5 * (near + seg_far)
                    a, b = sorted((half, seg_far))
                    m = 0.5 * (a + b)
                    extra.append(float(val(np.array([m]))[0]) ** tf * (b - a))
                    seg_far = half
                a, b = sorted((near, seg_far))
                other_pole = x if pole == 0.0 else 0.0

                def other(ymid, op=other_pole, ew=other_w):
                    return (px * abs(op - ymid) ** (-ew)) ** tf

                extra.append(_singular_piece(a, b, pole, expo_w * tf, other))
    S = power_sum(np.concatenate([pieces[0], np.array(extra)]))
    Mt = cells * h
    sigma = (a1 + a2) * tf
    tail = 2.0 * (px * (8.0 / 7.0) ** a1) ** tf * Mt ** (1.0 - sigma) / (sigma - 1.0)
    return S ** (1 / tf), (S + tail) ** (1 / tf) - S ** (1 / tf)


def capability_continuous_probe(s, s1, s2, t, n: int = 1, mode: str = "bracket",
                                xs: Optional[Sequence[float]] = None, config=None) -> ExperimentReport:
    """Quadrature estimates of the continuous capability norm at points x of a geometric schedule.

    ``mode='bracket'`` uses <.> weights (verdict compared with the discrete t-set);
    ``mode='power'`` uses |.| weights at the critical t = n/(s1+s2-s) with s < s1, s2.
    """
    cfg = get_config(config)
    if n != 1:
        raise DomainError("continuous capability probe is implemented for n = 1")
    s, s1, s2 = _check_weights(s, s1, s2)
    t = exponent(t)
    if mode == "power":
        if not (s < s1 and s < s2):
            raise DomainError("power mode needs s < s1 and s < s2")
        if t.is_inf or Fraction(1) / t.recip != Fraction(n) / (s1 + s2 - s):
            raise DomainError("power mode needs t = n/(s1+s2-s) exactly")
        xs = list(xs) if xs is not None else [2.0 ** k for k in range(-8, 9, 2)]
        cpx = 32
        vals, tails = [], []
        for x in xs:
            v, tl = _power_estimate(float(x), s, s1, s2, t, cpx, int(cfg["continuous_refine_levels"]))
            vals.append(v + tl)
            tails.append(tl)
        expected = BOUNDED
    elif mode == "bracket":
        xs = list(xs) if xs is not None else [2.0 ** k for k in range(2, 15)]
        h = 1.0 / float(cfg["continuous_cells_per_unit"])
        vals, tails = [], []
        for x in xs:
            v, tl = _bracket_estimate(float(x), s, s1, s2, t, h)
            if not math.isfinite(tl):
                vals.append(v)
            else:
                vals.append(v + tl)
            tails.append(tl)
        expected = BOUNDED if capability_t_set(s, s1, s2, n).contains(t) else DIVERGING
    else:
        raise DomainError("mode must be 'bracket' or 'power'")
    if any(not math.isfinite(x) for x in tails):
        verdict, info = DIVERGING, {"infinite_norm": True, "log_fit": False}
        slope = float("nan")
    elif mode == "power":
        # exact scale invariance: the estimate should be flat in x over the whole range
        slope = lsq_slope([math.log(x) for x in xs], [math.log(v) for v in vals])
        verdict = BOUNDED if abs(slope) < cfg["bounded_below"] else DIVERGING
        info = {"power_slope": slope, "log_fit": False}
    else:
        verdict, info = _classify_capability(xs, vals, t, cfg)
        slope = info["power_slope"]
    tup = {"s": format_rational(s), "s1": format_rational(s1), "s2": format_rational(s2),
           "t": str(t), "n": n}
    extras = dict(info, mode=mode, expected=expected, agrees=(verdict == expected),
                  tail_bounds=[x if math.isfinite(x) else None for x in tails])
    finite = [x for x in tails if math.isfinite(x)]
    return ExperimentReport("capability", tup, f"continuous-{mode}", [float(x) for x in xs], vals,
                            0.0 if math.isnan(slope) else slope, "poly-in-N", verdict, cfg,
                            max(finite) if finite else None, extras)
