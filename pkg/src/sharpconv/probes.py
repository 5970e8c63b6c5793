"""Growth probes: norm ratios of extremal pairs across a schedule, and dilation scaling."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .config import get_config
from .errors import DegenerateInput, DomainError, GridError, Unsupported
from .families import box_pair, critical_pair, log_pair, log_pattern
from .fitting import (
    BOUNDED,
    DIVERGING,
    INCONCLUSIVE,
    classify,
    fit_growth,
    lsq_slope,
    strictly_increasing,
)
from .index import YoungTuple, dilation_exponent, dual_young_tuple, format_rational, gauge_plus
from .lattice import LatticeFunction, convolve, power_sum, weighted_norm
from .report import ExperimentReport


def ratio(a: LatticeFunction, b: LatticeFunction, g: YoungTuple, method: Optional[str] = None,
          config=None) -> float:
    """||a * b||_{l(q,s)} / (||a||_{l(q1,s1)} ||b||_{l(q2,s2)})."""
    den = weighted_norm(a, g.q1, g.s1) * weighted_norm(b, g.q2, g.s2)
    if den == 0.0:
        raise DegenerateInput("a denominator norm vanishes")
    return weighted_norm(convolve(a, b, method=method, config=config), g.q, g.s) / den


def box_growth_exponent(g: YoungTuple) -> Fraction:
    """n [1 + (1/q+s/n)v0 - (1/q1+s1/n)v0 - (1/q2+s2/n)v0]: predicted box-pair growth rate."""
    n = g.n
    return n * (1 + gauge_plus(g.q, g.s, n) - gauge_plus(g.q1, g.s1, n) - gauge_plus(g.q2, g.s2, n))


def default_schedule(n: int, cfg) -> list:
    return list(cfg["schedule_n1"] if n == 1 else cfg["schedule_n2"])


def _check_schedule(schedule: Sequence[int]) -> list:
    schedule = [int(x) for x in schedule]
    if len(schedule) < 4:
        raise DomainError("a schedule needs at least 4 points")
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise DomainError("schedule must be strictly increasing")
    return schedule


def _point(job):
    """One schedule point; module-level so worker processes can run it."""
    g, family, N, cfg, method = job
    if family == "box":
        a, b = box_pair(N, g.n)
        return ratio(a, b, g, method, cfg), None
    if family == "critical":
        a, b = critical_pair(N, g)
        return ratio(a, b, g, method, cfg), None
    a, b, info = log_pair(N, g, radius_factor=cfg["log_radius_factor"], eps_cap=cfg["eps_delta_cap"])
    na = weighted_norm(a, g.q1, g.s1)
    nb = weighted_norm(b, g.q2, g.s2)
    num = weighted_norm(convolve(a, b, method=method, config=cfg), g.q, g.s)
    if na * nb == 0.0:
        raise DegenerateInput("a denominator norm vanishes")
    # relative inflation of the denominator if the truncated tails were restored
    infl = 1.0
    for nrm, tail, e in ((na, info["tail_a"], g.q1), (nb, info["tail_b"], g.q2)):
        if not e.is_inf:
            pf = float(e.q)
            infl *= (1.0 + tail / nrm ** pf) ** (1.0 / pf)
    info = dict(info, denominator_inflation=infl - 1.0)
    return num / (na * nb), info


def _run_points(jobs, cfg):
    workers = int(cfg.get("workers", 1) or 1)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_point, jobs))
    return [_point(j) for j in jobs]


def growth_probe(g: YoungTuple, family: str = "box", schedule: Optional[Sequence[int]] = None,
                 config=None, method: Optional[str] = None) -> ExperimentReport:
    """Ratios of an extremal family over a schedule, with a fitted growth exponent."""
    cfg = get_config(config)
    if family not in ("box", "critical", "log"):
        raise DomainError(f"unknown family {family!r}")
    schedule = _check_schedule(schedule if schedule is not None else default_schedule(g.n, cfg))
    alpha = box_growth_exponent(g)
    extras = {"box_exponent": format_rational(alpha), "dilation_exponent": format_rational(dilation_exponent(g))}
    probed = g
    if family == "log":
        pat = log_pattern(g)
        if pat is None:
            raise Unsupported(f"no log-corrected construction for {g}")
        if pat.startswith("dual"):
            probed = dual_young_tuple(g)
        elif pat == "swap-dual":
            probed = dual_young_tuple(g.swapped())
        extras["pattern"] = pat
        if probed is not g:
            extras["probed_tuple"] = probed.to_dict()
    results = _run_points([(probed, family, N, cfg, method) for N in schedule], cfg)
    ratios = [r for r, _ in results]
    if family == "box" or (family == "critical" and alpha != 0):
        kind = "poly-in-N"
    else:
        kind = "poly-in-lnN"
    slope = fit_growth(schedule, ratios, kind)
    tail = None
    if family == "log":
        infos = [i for _, i in results]
        extras["eps1"] = infos[0]["eps1"]
        extras["eps2"] = infos[0]["eps2"]
        extras["predicted_log_exponent"] = 1.0 + infos[0]["eps1"] + infos[0]["eps2"]
        extras["radii"] = [i["radius"] for i in infos]
        extras["truncated_numerator_is_lower_bound"] = True
        tail = max(i["denominator_inflation"] for i in infos)
    extras["strictly_increasing"] = strictly_increasing(ratios)
    return ExperimentReport("young", g.to_dict(), family, schedule, ratios, slope, kind,
                            classify(slope, cfg), cfg, tail, extras)


# ---------------------------------------------------------------- dilation

_ORIGIN_MEAN_RADIUS = {1: 0.25, 2: (math.sqrt(2.0) + math.log(1.0 + math.sqrt(2.0))) / 6.0}


def _grid_norm(values: np.ndarray, radii: np.ndarray, e, s: float, weight: str, cell: float) -> float:
    if weight == "power":
        w = np.power(radii, s)
    else:
        w = np.power(1.0 + radii * radii, 0.5 * s)
    if e.is_inf:
        return float(np.max(values * w))
    pf = float(e.q)
    vmax = float(np.max(values))
    return vmax * (power_sum((values / vmax) ** pf * np.power(w, pf)) * cell) ** (1.0 / pf)


def dilation_ratio(g: YoungTuple, lam: float, cells_per_radius: int = 64, weight: str = "power",
                   method: str = "auto", config=None) -> float:
    """Midpoint-rule ratio ||f_l * f_l||_(q,s) / (||f_l||_(q1,s1) ||f_l||_(q2,s2)), f_l = 1 on B(0, l)."""
    if cells_per_radius < 8:
        raise GridError(f"lambda/h = {cells_per_radius} < 8: grid too coarse")
    cfg = get_config(config)
    n = g.n
    if n not in (1, 2):
        raise DomainError("dilation probe supports n = 1, 2")
    m = int(cells_per_radius)
    h = lam / m
    # input cells i in [-m, m-1] per axis, centred at (i + 1/2) h
    idx = np.arange(-m, m, dtype=np.float64) + 0.5
    grids = np.meshgrid(*([idx] * n), indexing="ij") if n > 1 else [idx]
    rin = np.sqrt(sum(c * c for c in grids)) * h
    f = (rin < lam).astype(np.float64)
    F = LatticeFunction(f, (-m,) * n, trim=False)
    conv = convolve(F, F, method=method, config=cfg)
    vals = conv.values * h ** n
    # output index k has centre (k + 1) h; the origin cell uses its mean radius
    axes = [np.arange(l, l + s, dtype=np.float64) + 1.0 for l, s in zip(conv.lo, conv.shape)]
    og = np.meshgrid(*axes, indexing="ij") if n > 1 else [axes[0]]
    rout = np.sqrt(sum(c * c for c in og)) * h
    rout[rout == 0.0] = _ORIGIN_MEAN_RADIUS[n] * h
    cell = h ** n
    num = _grid_norm(vals, rout, g.q, float(g.s), weight, cell)
    d1 = _grid_norm(f, rin, g.q1, float(g.s1), weight, cell)
    d2 = _grid_norm(f, rin, g.q2, float(g.s2), weight, cell)
    return num / (d1 * d2)


def dilation_probe(g: YoungTuple, lambdas: Optional[Sequence[float]] = None, weight: str = "power",
                   config=None, method: str = "auto") -> ExperimentReport:
    """Scaling of the continuous ratio of dilated ball indicators as lambda -> 0."""
    cfg = get_config(config)
    lambdas = [float(x) for x in (lambdas if lambdas is not None else cfg["dilation_lambdas"])]
    if len(lambdas) < 4:
        raise DomainError("dilation probe needs at least 4 lambdas")
    if any(not (0 < x <= 1) for x in lambdas):
        raise DomainError("lambdas must lie in (0, 1]")
    if weight not in ("power", "bracket"):
        raise DomainError("weight must be 'power' or 'bracket'")
    m = int(cfg["dilation_cells_per_radius"])
    ratios = [dilation_ratio(g, lam, m, weight, method, cfg) for lam in lambdas]
    order = sorted(range(len(lambdas)), key=lambda i: lambdas[i])
    small = order[: max(2, (len(order) + 1) // 2)]  # the lambda -> 0 end
    slope = lsq_slope([math.log(lambdas[i]) for i in small], [math.log(ratios[i]) for i in small])
    n = g.n
    if weight == "power":
        predicted = -dilation_exponent(g)
    else:
        predicted = n * (1 + g.q.recip - g.q1.recip - g.q2.recip)
    mag = abs(slope)
    verdict = BOUNDED if mag < cfg["bounded_below"] else DIVERGING if mag > cfg["diverging_above"] else INCONCLUSIVE
    extras = {"weight": weight, "predicted_slope": format_rational(predicted),
              "slope_error": slope - float(predicted), "cells_per_radius": m}
    return ExperimentReport("dilation", g.to_dict(), f"ball-{weight}", lambdas, ratios, slope,
                            "poly-in-lambda", verdict, cfg, None, extras)
