"""Exact index arithmetic: extended exponents, weight powers, gauges and duals.

An exponent q in (0, inf] is stored through its reciprocal, so q = inf is the
ordinary rational 0 and every inequality is a comparison of Fractions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Union

from .errors import DomainError, ParseError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_INF_WORDS = {"inf", "infinity", "∞", "+inf"}

RationalLike = Union[Fraction, int, str]


def parse_rational(text: RationalLike) -> Fraction:
    """Read an integer or ``a/b`` (b > 0). Decimals and floats are refused."""
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"weight powers must be exact rationals, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"not an exact rational (integer or a/b): {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(x: Fraction) -> str:
    """Canonical reduced text, e.g. ``-1/2`` or ``3``."""
    return str(Fraction(x))


@dataclass(frozen=True)
class ExtendedExponent:
    """Exponent q in (0, inf], held exactly as ``recip = 1/q`` (0 encodes inf)."""

    recip: Fraction

    def __post_init__(self):
        r = self.recip
        if isinstance(r, (bool, float)) or not isinstance(r, (int, Fraction)):
            raise ParseError(f"reciprocal must be an exact rational, got {r!r}")
        r = Fraction(r)
        if r < 0:
            raise DomainError(f"reciprocal exponent must be >= 0, got {r}")
        object.__setattr__(self, "recip", r)

    @classmethod
    def from_q(cls, q: RationalLike) -> "ExtendedExponent":
        qv = parse_rational(q)
        if qv <= 0:
            raise DomainError(f"exponent must satisfy q > 0, got {qv}")
        return cls(1 / qv)

    @classmethod
    def parse(cls, text: Union[str, int, Fraction, "ExtendedExponent"]) -> "ExtendedExponent":
        if isinstance(text, ExtendedExponent):
            return text
        if isinstance(text, str) and text.strip().lower() in _INF_WORDS:
            return cls(Fraction(0))
        return cls.from_q(text)

    @property
    def is_inf(self) -> bool:
        return self.recip == 0

    @property
    def q(self) -> Union[Fraction, float]:
        """The exponent itself; ``float('inf')`` when recip = 0."""
        return float("inf") if self.recip == 0 else 1 / self.recip

    def as_float(self) -> float:
        return float(self.q)

    def __str__(self) -> str:
        return "inf" if self.recip == 0 else format_rational(1 / self.recip)

    def __repr__(self) -> str:
        return f"ExtendedExponent({self})"


INF = ExtendedExponent(Fraction(0))
ONE = ExtendedExponent(Fraction(1))


def exponent(x) -> ExtendedExponent:
    """Coerce text, an int, a Fraction q-value or an ExtendedExponent."""
    return ExtendedExponent.parse(x)


def require_theorem_range(*exps: ExtendedExponent, names=None) -> None:
    """Theorem-level deciders accept only 1 <= q <= inf."""
    for i, e in enumerate(exps):
        if e.recip > 1:
            label = names[i] if names else f"exponent #{i}"
            raise DomainError(f"{label} = {e} lies below 1; theorem deciders need 1 <= q <= inf")


def dual(e: ExtendedExponent) -> ExtendedExponent:
    """Dual index q' with 1/q + 1/q' = 1."""
    e = exponent(e)
    if e.recip > 1:
        raise DomainError(f"dual exponent undefined for q = {e} < 1")
    return ExtendedExponent(1 - e.recip)


def gauge(e: ExtendedExponent, s: RationalLike, n: int) -> Fraction:
    """1/q + s/n."""
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    return exponent(e).recip + parse_rational(s) / n


def gauge_plus(e: ExtendedExponent, s: RationalLike, n: int) -> Fraction:
    """max(1/q + s/n, 0)."""
    return max(gauge(e, s, n), Fraction(0))


def _check_dim(n) -> int:
    if isinstance(n, str):
        v = parse_rational(n)
        n = int(v) if v.denominator == 1 else n
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"dimension must be a positive integer, got {n!r}")
    return n


@dataclass(frozen=True)
class YoungTuple:
    """Index tuple (q, q1, q2, s, s1, s2; n) for  l(q1,s1) * l(q2,s2) -> l(q,s)."""

    q: ExtendedExponent
    q1: ExtendedExponent
    q2: ExtendedExponent
    s: Fraction
    s1: Fraction
    s2: Fraction
    n: int = 1

    def __post_init__(self):
        for name in ("q", "q1", "q2"):
            object.__setattr__(self, name, exponent(getattr(self, name)))
        for name in ("s", "s1", "s2"):
            object.__setattr__(self, name, parse_rational(getattr(self, name)))
        object.__setattr__(self, "n", _check_dim(self.n))

    def swapped(self) -> "YoungTuple":
        """Exchange (q1, s1) with (q2, s2)."""
        return YoungTuple(self.q, self.q2, self.q1, self.s, self.s2, self.s1, self.n)

    def to_dict(self) -> dict:
        return {f.name: (getattr(self, f.name) if f.name == "n" else str(getattr(self, f.name)))
                for f in fields(self)}

    def __str__(self) -> str:
        return "(" + ", ".join(str(getattr(self, f.name)) for f in fields(self)) + ")"


@dataclass(frozen=True)
class FracTuple:
    """Index tuple (q, p, s, t; lambda, n) for  I_lambda : l(p,t) -> l(q,s)."""

    q: ExtendedExponent
    p: ExtendedExponent
    s: Fraction
    t: Fraction
    lam: Fraction
    n: int = 1

    def __post_init__(self):
        object.__setattr__(self, "q", exponent(self.q))
        object.__setattr__(self, "p", exponent(self.p))
        for name in ("s", "t", "lam"):
            object.__setattr__(self, name, parse_rational(getattr(self, name)))
        object.__setattr__(self, "n", _check_dim(self.n))
        if not (0 < self.lam < self.n):
            raise DomainError(f"order lambda must satisfy 0 < lambda < n, got {self.lam} with n = {self.n}")

    def to_dict(self) -> dict:
        d = {}
        for f in fields(self):
            v = getattr(self, f.name)
            key = "lambda" if f.name == "lam" else f.name
            d[key] = v if f.name == "n" else str(v)
        return d

    def __str__(self) -> str:
        return "(" + ", ".join(str(getattr(self, f.name)) for f in fields(self)) + ")"


def dual_young_tuple(g: YoungTuple) -> YoungTuple:
    """(q, q1, q2, s, s1, s2) -> (q1', q', q2, -s1, -s, s2)."""
    return YoungTuple(dual(g.q1), dual(g.q), g.q2, -g.s1, -g.s, g.s2, g.n)


def dual_frac_tuple(g: FracTuple) -> FracTuple:
    """(q, p, s, t) -> (p', q', -t, -s)."""
    return FracTuple(dual(g.p), dual(g.q), -g.t, -g.s, g.lam, g.n)


def dilation_exponent(g: YoungTuple) -> Fraction:
    """n (g1 + g2 - 1 - g); zero exactly on the scaling-critical line."""
    return g.n * (gauge(g.q1, g.s1, g.n) + gauge(g.q2, g.s2, g.n) - 1 - gauge(g.q, g.s, g.n))
