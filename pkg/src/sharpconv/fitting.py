"""Least-squares growth exponents and verdict thresholds."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

BOUNDED, DIVERGING, INCONCLUSIVE = "Bounded", "Diverging", "Inconclusive"


def lsq_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Slope of the least-squares line through (x, y)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.size < 2:
        raise ValueError("need at least two points to fit a slope")
    xm, ym = x.mean(), y.mean()
    sxx = float(np.sum((x - xm) ** 2))
    return float(np.sum((x - xm) * (y - ym)) / sxx)


def upper_half(seq: Sequence) -> list:
    """The points from index len//2 onward (the asymptotic end of a schedule)."""
    seq = list(seq)
    return seq[len(seq) // 2:]


def fit_growth(schedule: Sequence[float], ratios: Sequence[float], kind: str) -> float:
    """Fit ln ratio against ln N (``poly-in-N``) or ln ln N (``poly-in-lnN``) on the upper half."""
    xs = upper_half(schedule)
    ys = upper_half(ratios)
    if kind == "poly-in-N":
        xv = [math.log(x) for x in xs]
    elif kind == "poly-in-lnN":
        xv = [math.log(math.log(x)) for x in xs]
    else:
        raise ValueError(f"unknown fit kind {kind!r}")
    return lsq_slope(xv, [math.log(y) for y in ys])


def classify(slope: float, cfg) -> str:
    if slope < cfg["bounded_below"]:
        return BOUNDED
    if slope > cfg["diverging_above"]:
        return DIVERGING
    return INCONCLUSIVE


def strictly_increasing(values: Sequence[float]) -> bool:
    return all(b > a for a, b in zip(values, values[1:]))
