"""Extremal sequence families used to certify or refute Young verdicts."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from .errors import DomainError
from .index import YoungTuple, dual_young_tuple
from .lattice import LatticeFunction, bracket_power, cube_coords, sq_norm

SHELL_COUNT = {1: 2, 2: 8}  # points per unit of sup-norm radius: 2 (n=1), 8m (n=2)


def box_pair(N: int, n: int) -> Tuple[LatticeFunction, LatticeFunction]:
    """Indicators of the cubes |k| <= N and |k| <= 2N."""
    if N < 1:
        raise DomainError("box pair needs N >= 1")
    return LatticeFunction.cube_indicator(N, n), LatticeFunction.cube_indicator(2 * N, n)


def critical_pair(N: int, g: YoungTuple) -> Tuple[LatticeFunction, LatticeFunction]:
    """a_k = <k>^(-s1-n/q1), b_k = <k>^(-s2-n/q2), both cut to |k| <= N."""
    if N < 2:
        raise DomainError("critical pair needs N >= 2")
    n = g.n
    ea = -float(g.s1 + n * g.q1.recip)
    eb = -float(g.s2 + n * g.q2.recip)
    sq = sq_norm(cube_coords(N, n))
    lo = (-N,) * n
    return LatticeFunction(bracket_power(sq, ea), lo), LatticeFunction(bracket_power(sq, eb), lo)


# ---------------------------------------------------------------- log-corrected pair

def displayed_log_pattern(g: YoungTuple) -> bool:
    """q = inf, s = s2 in (0, s1], 1 = 1/q1 + 1/q2 + s1/n, s/n < 1/q1 + s1/n, q2 < inf."""
    n = g.n
    return (g.q.recip == 0 and 0 < g.s <= g.s1 and g.s == g.s2
            and g.q1.recip + g.q2.recip + g.s1 / n == 1
            and g.s / n < g.q1.recip + g.s1 / n
            and g.q2.recip > 0)


def log_pattern(g: YoungTuple) -> Optional[str]:
    """Which supported endpoint pattern ``g`` exhibits: displayed, swapped, dual, dual-swapped."""
    if displayed_log_pattern(g):
        return "displayed"
    if displayed_log_pattern(g.swapped()):
        return "swapped"
    if g.q.recip <= 1 and g.q1.recip <= 1:
        d = dual_young_tuple(g)
        if displayed_log_pattern(d):
            return "dual"
        if displayed_log_pattern(d.swapped()):
            return "dual-swapped"
    if g.q.recip <= 1 and g.q2.recip <= 1:
        d = dual_young_tuple(g.swapped())
        if displayed_log_pattern(d):
            return "swap-dual"
    return None


def default_log_eps(r1: Fraction, r2: Fraction, cap: float = 0.05) -> Tuple[float, float]:
    """delta = min(cap, (1 - 1/q1 - 1/q2)/4); eps_i = -1/q_i - delta, or 0 when q_i = inf."""
    delta = min(cap, float(1 - r1 - r2) / 4.0)
    e1 = 0.0 if r1 == 0 else -float(r1) - delta
    e2 = 0.0 if r2 == 0 else -float(r2) - delta
    return e1, e2


def check_log_eps(r1: Fraction, r2: Fraction, e1: float, e2: float) -> None:
    if r1 > 0 and not (e1 / float(r1) < -1):
        raise DomainError(f"need q1*eps1 < -1, got eps1 = {e1} with q1 = {1 / r1}")
    if r1 == 0 and e1 != 0:
        raise DomainError("eps1 must be 0 when q1 = inf")
    if r2 == 0 or not (e2 / float(r2) < -1):
        raise DomainError(f"need q2 < inf and q2*eps2 < -1, got eps2 = {e2}")
    if not (e1 + e2 > -1):
        raise DomainError(f"need eps1 + eps2 > -1, got {e1 + e2}")


def log_tail(beta: float, radius: float, n: int) -> float:
    """Bound on sum_{|m|_inf > radius} <m>^(-n) (1 + ln<m>)^beta, beta < -1, radius >= 1.

    Each shell |m|_inf = r holds at most SHELL_COUNT*r^(n-1) points and every term is
    at most r^(-n) (1 + ln r)^beta, which decreases in r; compare with the integral.
    """
    if not beta < -1:
        return math.inf
    if radius < 1:
        raise DomainError("tail radius must be >= 1")
    return SHELL_COUNT[n] * (1.0 + math.log(radius)) ** (beta + 1.0) / (-beta - 1.0)


def _anchor(N, n: int) -> Tuple[int, ...]:
    if isinstance(N, (int, np.integer)):
        return (int(N),) + (0,) * (n - 1)
    N = tuple(int(x) for x in N)
    if len(N) != n:
        raise DomainError("anchor must have one coordinate per axis")
    return N


def log_pair(N_anchor, g: YoungTuple, eps1: Optional[float] = None, eps2: Optional[float] = None,
             radius_factor: float = 8, eps_cap: float = 0.05):
    """Log-corrected pair for the displayed endpoint pattern or its (1<->2) swap.

    Returns ``(a, b, info)``; ``info`` holds the epsilons, the truncation radius and
    tail bounds for the q_i-th power sums of the two denominators.
    """
    pat = log_pattern(g)
    if pat not in ("displayed", "swapped"):
        raise DomainError(f"tuple {g} is not in the displayed log pattern or its swap (found {pat})")
    base = g if pat == "displayed" else g.swapped()
    n = base.n
    r1, r2 = base.q1.recip, base.q2.recip
    d1, d2 = default_log_eps(r1, r2, eps_cap)
    e1 = d1 if eps1 is None else float(eps1)
    e2 = d2 if eps2 is None else float(eps2)
    check_log_eps(r1, r2, e1, e2)
    N = _anchor(N_anchor, n)
    normN = math.sqrt(sum(x * x for x in N))
    if normN < 1:
        raise DomainError("anchor must be nonzero")
    R = int(math.ceil(radius_factor * normN))
    coords = cube_coords(R, n)
    sq = sq_norm(coords)
    sqd = sq_norm(tuple(c - a for c, a in zip(coords, N)))
    lb = 0.5 * np.log1p(sq.astype(np.float64))
    lbd = 0.5 * np.log1p(sqd.astype(np.float64))
    a = bracket_power(sq, -float(n * r1 + base.s1)) * np.power(1.0 + lb, e1)
    b = (bracket_power(sqd, -float(n * r2)) * bracket_power(sq, -float(base.s2))
         * np.power(1.0 + lbd, e2))
    lo = (-R,) * n
    fa, fb = LatticeFunction(a, lo), LatticeFunction(b, lo)
    tail_a = 0.0 if r1 == 0 else log_tail(e1 / float(r1), R, n)
    tail_b = log_tail(e2 / float(r2), max(1.0, R - max(abs(x) for x in N)), n)
    info = {"pattern": pat, "eps1": e1, "eps2": e2, "radius": R,
            "tail_a": tail_a, "tail_b": tail_b}
    if pat == "swapped":
        fa, fb = fb, fa
        info["tail_a"], info["tail_b"] = tail_b, tail_a
    return fa, fb, info
