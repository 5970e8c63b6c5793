"""Seeded samplers of exact rational index tuples for bulk property checks.

Roughly a third of each sample is uniform, a third is pushed onto a scaling
identity (where A4/C4 live) and a third forces weight or gauge equalities (where
the conditional clauses bite). Uniform sampling alone would almost never land
on those measure-zero sets.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator, Tuple

MAX_DEN = 12
WEIGHT_BOUND = 3


def _rat(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int = MAX_DEN) -> Fraction:
    den = rng.randint(1, max_den)
    a = -(-lo.numerator * den // lo.denominator)  # ceil(lo * den)
    b = hi.numerator * den // hi.denominator
    return Fraction(rng.randint(a, b), den)


def _recip(rng) -> Fraction:
    """A reciprocal exponent in [0, 1]; the endpoints 0 (q = inf) and 1 get extra mass."""
    u = rng.random()
    if u < 0.15:
        return Fraction(0)
    if u < 0.3:
        return Fraction(1)
    return _rat(rng, Fraction(0), Fraction(1))


def _weight(rng) -> Fraction:
    if rng.random() < 0.15:
        return Fraction(0)
    return _rat(rng, Fraction(-WEIGHT_BOUND), Fraction(WEIGHT_BOUND))


def young_raw(rng: random.Random) -> Tuple:
    """(r, r1, r2, s, s1, s2, n) with exact Fractions; r = 1/q."""
    n = rng.randint(1, 3)
    r, r1, r2 = _recip(rng), _recip(rng), _recip(rng)
    s, s1, s2 = _weight(rng), _weight(rng), _weight(rng)
    mode = rng.randrange(3)
    if mode == 1:
        # scaling identity 1 + g = g1 + g2, solved for one weight
        which = rng.randrange(3)
        if which == 0:
            s = n * (r1 + s1 / n + r2 + s2 / n - 1 - r)
        elif which == 1:
            s1 = n * (1 + r + s / n - r2 - s2 / n - r1)
        else:
            s2 = n * (1 + r + s / n - r1 - s1 / n - r2)
    elif mode == 2:
        pick = rng.randrange(5)
        if pick == 0:
            s = s1
        elif pick == 1:
            s = s2
        elif pick == 2:
            s2 = -s1
            r2 = 1 - r1
        elif pick == 3:
            # equal gauges g = g1 with (q, s) != (q1, s1) allowed
            s = n * (r1 + s1 / n - r)
        else:
            s = s1 = s2 = Fraction(0)
    if max(abs(s), abs(s1), abs(s2)) > WEIGHT_BOUND:
        return young_raw(rng)
    return r, r1, r2, s, s1, s2, n


def frac_raw(rng: random.Random) -> Tuple:
    """(r, rp, s, t, lam, n) with 0 < lam < n."""
    n = rng.randint(1, 3)
    r, rp = _recip(rng), _recip(rng)
    s, t = _weight(rng), _weight(rng)
    den = rng.randint(2, MAX_DEN)
    lam = Fraction(rng.randint(1, n * den - 1), den)
    mode = rng.randrange(3)
    if mode == 1:
        t = n * (lam / n + r + s / n - rp)
    elif mode == 2:
        pick = rng.randrange(3)
        if pick == 0:
            t = s
        elif pick == 1:
            rp, t = Fraction(1), lam - n
        else:
            r, s = Fraction(0), n - lam
    if max(abs(s), abs(t)) > WEIGHT_BOUND:
        return frac_raw(rng)
    return r, rp, s, t, lam, n


def young_sample(count: int, seed: int = 0) -> Iterator[Tuple]:
    rng = random.Random(seed)
    for _ in range(count):
        yield young_raw(rng)


def frac_sample(count: int, seed: int = 0) -> Iterator[Tuple]:
    rng = random.Random(seed)
    for _ in range(count):
        yield frac_raw(rng)
