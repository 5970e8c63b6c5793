"""Exact membership tests for the sharp Young and fractional-integral regions.

Every decider returns a :class:`Verdict` whose trace lists each clause of each
candidate condition in display order. Conditional equalities are material
implications; the trace keeps antecedent and consequent separately.

The ``*_flags`` functions are short-circuiting boolean twins of the traced
conditions, used for bulk sampling. Tests pin them to the traced versions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError
from .index import (
    FracTuple,
    YoungTuple,
    exponent,
    format_rational,
    parse_rational,
    require_theorem_range,
)

ZERO = Fraction(0)
ONE_Q = Fraction(1)


@dataclass(frozen=True)
class Clause:
    condition: str
    text: str
    passed: bool
    detail: str = ""
    antecedent: Optional[bool] = None
    consequent: Optional[bool] = None

    def to_dict(self) -> dict:
        d = {"condition": self.condition, "clause": self.text, "pass": self.passed}
        if self.antecedent is not None:
            d["antecedent"] = self.antecedent
            d["consequent"] = self.consequent
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass(frozen=True)
class Verdict:
    holds: bool
    matched: Optional[str]
    trace: tuple
    decider: str
    conditions: tuple = ()
    tuple_fields: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.holds != (self.matched is not None):
            raise AssertionError("holds must coincide with a matched condition")

    def __bool__(self) -> bool:
        return self.holds

    def condition_passed(self, label: str) -> bool:
        rows = [c for c in self.trace if c.condition == label]
        return bool(rows) and all(c.passed for c in rows)

    def first_failing(self, label: str) -> Optional[str]:
        for c in self.trace:
            if c.condition == label and not c.passed:
                return c.text
        return None

    def to_dict(self) -> dict:
        return {
            "decider": self.decider,
            "holds": self.holds,
            "matched": self.matched,
            "first_failing": {c: self.first_failing(c) for c in self.conditions},
            "trace": [c.to_dict() for c in self.trace],
            "tuple": self.tuple_fields,
        }

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)

    def pretty(self) -> str:
        lines = [f"{self.decider}: {'HOLDS' if self.holds else 'FAILS'}"
                 + (f" ({self.matched})" if self.matched else "")]
        for c in self.trace:
            mark = "pass" if c.passed else "FAIL"
            extra = f"   [{c.detail}]" if c.detail else ""
            lines.append(f"  {c.condition:<8} {mark}  {c.text}{extra}")
        return "\n".join(lines)


@dataclass(frozen=True)
class TSet:
    """The set (lower, inf] or [lower, inf] of admissible l^t exponents."""

    lower: Fraction
    lower_open: bool

    def contains(self, t) -> bool:
        t = exponent(t)
        if t.is_inf:
            return True
        tv = 1 / t.recip
        return tv > self.lower if self.lower_open else tv >= self.lower

    def to_dict(self) -> dict:
        return {"lower": format_rational(self.lower), "lower_open": self.lower_open,
                "upper": "inf", "upper_open": False}

    def __str__(self) -> str:
        return f"{'(' if self.lower_open else '['}{format_rational(self.lower)}, inf]"


# ---------------------------------------------------------------- clause engine

def _fmt(x: Fraction) -> str:
    return format_rational(x)


def _cmp(op: str, a: Fraction, b: Fraction):
    ok = {"<": a < b, "<=": a <= b, "=": a == b, ">": a > b, ">=": a >= b}[op]
    return ok, f"{_fmt(a)} {op} {_fmt(b)}"


def _implies(ante: bool, cons: bool, detail: str):
    return (not ante) or cons, detail, ante, cons


def _run(label: str, clauses: Sequence, ctx: dict) -> list:
    out = []
    for text, fn in clauses:
        res = fn(ctx)
        if len(res) == 2:
            out.append(Clause(label, text, bool(res[0]), res[1]))
        else:
            ok, detail, ante, cons = res
            out.append(Clause(label, text, bool(ok), detail, bool(ante), bool(cons)))
    return out


class _Ctx(dict):
    """Exact derived quantities shared by all clause evaluators."""

    __getattr__ = dict.__getitem__


def _young_ctx(g: YoungTuple) -> _Ctx:
    n = g.n
    c = _Ctx(r=g.q.recip, r1=g.q1.recip, r2=g.q2.recip, s=g.s, s1=g.s1, s2=g.s2, n=n)
    c["g"] = c.r + c.s / n
    c["g1"] = c.r1 + c.s1 / n
    c["g2"] = c.r2 + c.s2 / n
    return c


def _young_fields(g: YoungTuple) -> dict:
    d = g.to_dict()
    c = _young_ctx(g)
    d["gauges"] = {"g": _fmt(c.g), "g1": _fmt(c.g1), "g2": _fmt(c.g2)}
    return d


def _same_exp_weight(ra, sa, rb, sb) -> bool:
    return ra == rb and sa == sb


A1_CLAUSES = [
    ("s ≤ s1", lambda c: _cmp("<=", c.s, c.s1)),
    ("s ≤ s2", lambda c: _cmp("<=", c.s, c.s2)),
    ("0 ≤ s1+s2", lambda c: _cmp("<=", ZERO, c.s1 + c.s2)),
    ("1+(1/q+s/n)∨0 < (1/q1+s1/n)∨0+(1/q2+s2/n)∨0",
     lambda c: _cmp("<", 1 + max(c.g, ZERO), max(c.g1, ZERO) + max(c.g2, ZERO))),
    ("1/q+s/n ≤ 1/q1+s1/n", lambda c: _cmp("<=", c.g, c.g1)),
    ("1/q+s/n ≤ 1/q2+s2/n", lambda c: _cmp("<=", c.g, c.g2)),
    ("1 ≤ 1/q1+s1/n+1/q2+s2/n", lambda c: _cmp("<=", ONE_Q, c.g1 + c.g2)),
    ("(q,s)=(q1,s1) if 1/q+s/n = 1/q1+s1/n",
     lambda c: _implies(c.g == c.g1, _same_exp_weight(c.r, c.s, c.r1, c.s1),
                        f"gauges {_fmt(c.g)} vs {_fmt(c.g1)}")),
    ("(q,s)=(q2,s2) if 1/q+s/n = 1/q2+s2/n",
     lambda c: _implies(c.g == c.g2, _same_exp_weight(c.r, c.s, c.r2, c.s2),
                        f"gauges {_fmt(c.g)} vs {_fmt(c.g2)}")),
    ("(q1',-s1)=(q2,s2) if 1 = 1/q1+s1/n+1/q2+s2/n",
     lambda c: _implies(c.g1 + c.g2 == 1, _same_exp_weight(1 - c.r1, -c.s1, c.r2, c.s2),
                        f"gauge sum {_fmt(c.g1 + c.g2)}")),
]


def _a2_pattern(c):
    p1 = c.r == c.r1 and c.r2 == 1
    p2 = c.r == c.r2 and c.r1 == 1
    p3 = c.r == 0 and c.r1 + c.r2 == 1
    names = [nm for nm, ok in (("q=q1,q2=1", p1), ("q=q2,q1=1", p2), ("q=inf,1/q1+1/q2=1", p3)) if ok]
    return p1 or p2 or p3, ("matches " + "; ".join(names)) if names else "no pattern"


A2_CLAUSES = [
    ("s=s1=s2=0", lambda c: (c.s == 0 and c.s1 == 0 and c.s2 == 0,
                             f"s={_fmt(c.s)}, s1={_fmt(c.s1)}, s2={_fmt(c.s2)}")),
    ("q=q1,q2=1 or q=q2,q1=1 or q=∞,1/q1+1/q2=1", _a2_pattern),
]

A3_CLAUSES = [
    ("s ≤ s1", lambda c: _cmp("<=", c.s, c.s1)),
    ("s ≤ s2", lambda c: _cmp("<=", c.s, c.s2)),
    ("1/q1+1/q2 = 1", lambda c: _cmp("=", c.r1 + c.r2, ONE_Q)),
    ("s1+s2 = 0", lambda c: _cmp("=", c.s1 + c.s2, ZERO)),
    ("1/q+s/n < 0", lambda c: _cmp("<", c.g, ZERO)),
    ("0 ≤ 1/q1+s1/n", lambda c: _cmp("<=", ZERO, c.g1)),
    ("0 ≤ 1/q2+s2/n", lambda c: _cmp("<=", ZERO, c.g2)),
]

A4_CLAUSES = [
    ("s ≤ s1", lambda c: _cmp("<=", c.s, c.s1)),
    ("s ≤ s2", lambda c: _cmp("<=", c.s, c.s2)),
    ("0 ≤ s1+s2", lambda c: _cmp("<=", ZERO, c.s1 + c.s2)),
    ("1+1/q+s/n = 1/q1+s1/n+1/q2+s2/n", lambda c: _cmp("=", 1 + c.g, c.g1 + c.g2)),
    ("1/q ≤ 1/q1+1/q2", lambda c: _cmp("<=", c.r, c.r1 + c.r2)),
    ("1/q+s/n < 1/q1+s1/n", lambda c: _cmp("<", c.g, c.g1)),
    ("1/q+s/n < 1/q2+s2/n", lambda c: _cmp("<", c.g, c.g2)),
    ("1/q+s/n > 0", lambda c: _cmp(">", c.g, ZERO)),
    # endpoint exclusions, closed under the dual map (the q1 = 1 and q2 = 1 cases are duals of q = inf)
    ("s<s1, s<s2 if q=∞",
     lambda c: _implies(c.r == 0, c.s < c.s1 and c.s < c.s2,
                        f"1/q={_fmt(c.r)}, s={_fmt(c.s)}, s1={_fmt(c.s1)}, s2={_fmt(c.s2)}")),
    ("s<s1, 0<s1+s2 if q1=1",
     lambda c: _implies(c.r1 == 1, c.s < c.s1 and c.s1 + c.s2 > 0,
                        f"1/q1={_fmt(c.r1)}, s={_fmt(c.s)}, s1={_fmt(c.s1)}, s1+s2={_fmt(c.s1 + c.s2)}")),
    ("s<s2, 0<s1+s2 if q2=1",
     lambda c: _implies(c.r2 == 1, c.s < c.s2 and c.s1 + c.s2 > 0,
                        f"1/q2={_fmt(c.r2)}, s={_fmt(c.s)}, s2={_fmt(c.s2)}, s1+s2={_fmt(c.s1 + c.s2)}")),
]

YOUNG_CONDITIONS = (("A1", A1_CLAUSES), ("A2", A2_CLAUSES), ("A3", A3_CLAUSES), ("A4", A4_CLAUSES))


def _check_young(g: YoungTuple) -> None:
    if not isinstance(g, YoungTuple):
        raise TypeError("expected a YoungTuple")
    require_theorem_range(g.q, g.q1, g.q2, names=("q", "q1", "q2"))


def _single(label: str, clauses, g: YoungTuple) -> Verdict:
    _check_young(g)
    trace = _run(label, clauses, _young_ctx(g))
    ok = all(c.passed for c in trace)
    return Verdict(ok, label if ok else None, tuple(trace), f"cond-{label}", (label,), _young_fields(g))


def cond_A1(g: YoungTuple) -> Verdict:
    return _single("A1", A1_CLAUSES, g)


def cond_A2(g: YoungTuple) -> Verdict:
    return _single("A2", A2_CLAUSES, g)


def cond_A3(g: YoungTuple) -> Verdict:
    return _single("A3", A3_CLAUSES, g)


def cond_A4(g: YoungTuple) -> Verdict:
    return _single("A4", A4_CLAUSES, g)


def _union(decider: str, g, ctx, conds, fields, prefix=()) -> Verdict:
    """Evaluate every listed condition; optional ``prefix`` clauses are required."""
    trace = list(prefix)
    matched = None
    pre_ok = all(c.passed for c in prefix)
    for label, clauses in conds:
        rows = _run(label, clauses, ctx)
        trace.extend(rows)
        if matched is None and all(r.passed for r in rows):
            matched = label
    if not pre_ok:
        matched = None
    labels = tuple(dict.fromkeys([c.condition for c in prefix] + [lab for lab, _ in conds]))
    return Verdict(matched is not None, matched, tuple(trace), decider, labels, fields)


def discrete_young_holds(g: YoungTuple) -> Verdict:
    """l(q1,s1) * l(q2,s2) in l(q,s) on the lattice: A1 or A2 or A3 or A4."""
    _check_young(g)
    return _union("discrete-young", g, _young_ctx(g), YOUNG_CONDITIONS, _young_fields(g))


def power_young_holds(g: YoungTuple) -> Verdict:
    """Power weights |x|^s on R^n: A2 or A4."""
    _check_young(g)
    conds = (YOUNG_CONDITIONS[1], YOUNG_CONDITIONS[3])
    return _union("power-young", g, _young_ctx(g), conds, _young_fields(g))


BRACKET_CLAUSE = ("1+1/q ≥ 1/q1+1/q2", lambda c: _cmp(">=", 1 + c.r, c.r1 + c.r2))


def bracket_young_holds(g: YoungTuple) -> Verdict:
    """Bracket weights <x>^s on R^n: 1 + 1/q >= 1/q1 + 1/q2 and one of A1..A4."""
    _check_young(g)
    ctx = _young_ctx(g)
    pre = _run("B", [BRACKET_CLAUSE], ctx)
    return _union("bracket-young", g, ctx, YOUNG_CONDITIONS, _young_fields(g), pre)


def multiplier_transfer_holds(g: YoungTuple) -> Verdict:
    """Bilinear Fourier multiplier transfer: the same condition set as the lattice case."""
    v = discrete_young_holds(g)
    return Verdict(v.holds, v.matched, v.trace, "mod-multiplier", v.conditions, v.tuple_fields)


def modulation_product_holds(p, p1, p2, g: YoungTuple) -> Verdict:
    """Product estimate on modulation spaces: 1/p <= 1/p1 + 1/p2 and one of A1..A4."""
    p, p1, p2 = exponent(p), exponent(p1), exponent(p2)
    require_theorem_range(p, p1, p2, names=("p", "p1", "p2"))
    _check_young(g)
    ctx = _young_ctx(g)
    ctx.update(rp=p.recip, rp1=p1.recip, rp2=p2.recip)
    pre = _run("M", [("1/p ≤ 1/p1+1/p2", lambda c: _cmp("<=", c.rp, c.rp1 + c.rp2))], ctx)
    fields = _young_fields(g)
    fields.update(p=str(p), p1=str(p1), p2=str(p2))
    return _union("mod-product", g, ctx, YOUNG_CONDITIONS, fields, pre)


# ------------------------------------------------------------ proposition level

def _prop_exps(*xs):
    return [exponent(x) for x in xs]


def embedding_discrete_holds(q1, s1, q2, s2, n: int = 1) -> Verdict:
    """l(q1,s1) contained in l(q2,s2); exponents anywhere in (0, inf]."""
    e1, e2 = _prop_exps(q1, q2)
    s1, s2 = parse_rational(s1), parse_rational(s2)
    c = _Ctx(r1=e1.recip, r2=e2.recip, s1=s1, s2=s2, g1=e1.recip + s1 / n, g2=e2.recip + s2 / n)
    strict = [("s2 ≤ s1", lambda c: _cmp("<=", c.s2, c.s1)),
              ("1/q2+s2/n < 1/q1+s1/n", lambda c: _cmp("<", c.g2, c.g1))]
    equal = [("s2 = s1", lambda c: _cmp("=", c.s2, c.s1)),
             ("q2 = q1", lambda c: _cmp("=", c.r2, c.r1))]
    f = {"q1": str(e1), "s1": _fmt(s1), "q2": str(e2), "s2": _fmt(s2), "n": n}
    return _union("embed-d", None, c, (("E<", strict), ("E=", equal)), f)


def embedding_continuous_holds(q1, s1, q2, s2, n: int = 1) -> Verdict:
    """L(q1,s1) contained in L(q2,s2) on R^n; exponents anywhere in (0, inf]."""
    e1, e2 = _prop_exps(q1, q2)
    s1, s2 = parse_rational(s1), parse_rational(s2)
    c = _Ctx(r1=e1.recip, r2=e2.recip, s1=s1, s2=s2, g1=e1.recip + s1 / n, g2=e2.recip + s2 / n)
    strict = [("s2 ≤ s1", lambda c: _cmp("<=", c.s2, c.s1)),
              ("1/q2 ≥ 1/q1", lambda c: _cmp("<=", c.r1, c.r2)),
              ("1/q2+s2/n < 1/q1+s1/n", lambda c: _cmp("<", c.g2, c.g1))]
    equal = [("s2 = s1", lambda c: _cmp("=", c.s2, c.s1)),
             ("q2 = q1", lambda c: _cmp("=", c.r2, c.r1))]
    f = {"q1": str(e1), "s1": _fmt(s1), "q2": str(e2), "s2": _fmt(s2), "n": n}
    return _union("embed-c", None, c, (("E<", strict), ("E=", equal)), f)


def _unweighted(decider: str, q, q1, q2, scaling_op: str) -> Verdict:
    e, e1, e2 = _prop_exps(q, q1, q2)
    c = _Ctx(r=e.recip, r1=e1.recip, r2=e2.recip)
    clauses = [(f"1+1/q {'≤' if scaling_op == '<=' else '='} 1/q1+1/q2",
                lambda c: _cmp(scaling_op, 1 + c.r, c.r1 + c.r2)),
               ("1/q ≤ 1/q1", lambda c: _cmp("<=", c.r, c.r1)),
               ("1/q ≤ 1/q2", lambda c: _cmp("<=", c.r, c.r2))]
    f = {"q": str(e), "q1": str(e1), "q2": str(e2)}
    return _union(decider, None, c, (("Y0", clauses),), f)


def unweighted_discrete_young_holds(q, q1, q2) -> Verdict:
    """Unweighted lattice Young: 1 + 1/q <= 1/q1 + 1/q2, 1/q <= 1/q1, 1/q <= 1/q2."""
    return _unweighted("young-d0", q, q1, q2, "<=")


def unweighted_continuous_young_holds(q, q1, q2) -> Verdict:
    """Unweighted Young on R^n: the scaling identity replaces the inequality."""
    return _unweighted("young-c0", q, q1, q2, "=")


# ------------------------------------------------------------ fractional integral

def _frac_ctx(g: FracTuple) -> _Ctx:
    n = g.n
    c = _Ctx(r=g.q.recip, rp=g.p.recip, s=g.s, t=g.t, lam=g.lam, n=n)
    c["g"] = c.r + c.s / n
    c["gp"] = c.rp + c.t / n
    c["ln"] = c.lam / n
    return c


C1_CLAUSES = [
    ("s ≤ t", lambda c: _cmp("<=", c.s, c.t)),
    ("λ/n+(1/q+s/n)∨0 < (1/p+t/n)∨0", lambda c: _cmp("<", c.ln + max(c.g, ZERO), max(c.gp, ZERO))),
    ("λ/n+1/q+s/n ≤ 1", lambda c: _cmp("<=", c.ln + c.g, ONE_Q)),
    ("(q',-s)=(1,λ-n) if λ/n+1/q+s/n = 1",
     lambda c: _implies(c.ln + c.g == 1, c.r == 0 and -c.s == c.lam - c.n,
                        f"λ/n+1/q+s/n = {_fmt(c.ln + c.g)}")),
]

C3_CLAUSES = [
    ("s ≤ t", lambda c: _cmp("<=", c.s, c.t)),
    ("p = 1", lambda c: _cmp("=", c.rp, ONE_Q)),
    ("t = λ-n", lambda c: _cmp("=", c.t, c.lam - c.n)),
    ("1/q+s/n < 0", lambda c: _cmp("<", c.g, ZERO)),
]

C4_CLAUSES = [
    ("s ≤ t", lambda c: _cmp("<=", c.s, c.t)),
    ("λ/n+1/q+s/n = 1/p+t/n", lambda c: _cmp("=", c.ln + c.g, c.gp)),
    ("1/q ≤ 1/p", lambda c: _cmp("<=", c.r, c.rp)),
    ("1/q+s/n > 0", lambda c: _cmp(">", c.g, ZERO)),
    ("1/p+t/n < 1", lambda c: _cmp("<", c.gp, ONE_Q)),
    ("q≠∞, p≠1 if s=t",
     lambda c: _implies(c.s == c.t, c.r != 0 and c.rp != 1, f"1/q={_fmt(c.r)}, 1/p={_fmt(c.rp)}")),
]

FRAC_CONDITIONS = (("C1", C1_CLAUSES), ("C3", C3_CLAUSES), ("C4", C4_CLAUSES))


def _check_frac(g: FracTuple) -> None:
    if not isinstance(g, FracTuple):
        raise TypeError("expected a FracTuple")
    require_theorem_range(g.q, g.p, names=("q", "p"))


def _frac_fields(g: FracTuple) -> dict:
    d = g.to_dict()
    c = _frac_ctx(g)
    d["gauges"] = {"g": _fmt(c.g), "gp": _fmt(c.gp), "lambda/n": _fmt(c.ln)}
    return d


def _frac_single(label, clauses, g) -> Verdict:
    _check_frac(g)
    trace = _run(label, clauses, _frac_ctx(g))
    ok = all(c.passed for c in trace)
    return Verdict(ok, label if ok else None, tuple(trace), f"cond-{label}", (label,), _frac_fields(g))


def cond_C1(g: FracTuple) -> Verdict:
    return _frac_single("C1", C1_CLAUSES, g)


def cond_C3(g: FracTuple) -> Verdict:
    return _frac_single("C3", C3_CLAUSES, g)


def cond_C4(g: FracTuple) -> Verdict:
    return _frac_single("C4", C4_CLAUSES, g)


def frac_discrete_holds(g: FracTuple) -> Verdict:
    """I_lambda : l(p,t) -> l(q,s) on the lattice: C1 or C3 or C4."""
    _check_frac(g)
    return _union("frac-d", g, _frac_ctx(g), FRAC_CONDITIONS, _frac_fields(g))


def frac_continuous_holds(g: FracTuple) -> Verdict:
    """Power-weighted I_lambda on R^n: C4 only."""
    _check_frac(g)
    return _union("frac-c", g, _frac_ctx(g), (FRAC_CONDITIONS[2],), _frac_fields(g))


# ------------------------------------------------------------ weight capability

def capability_t_set(s, s1, s2, n: int) -> TSet:
    """Exponents t for which <k>^s / (<k-j>^s1 <j>^s2) is l^t_j bounded uniformly in k."""
    s, s1, s2 = parse_rational(s), parse_rational(s1), parse_rational(s2)
    if not (s > 0 and s <= s1 and s <= s2):
        raise DomainError(f"capability set needs 0 < s <= s1, s2; got s={s}, s1={s1}, s2={s2}")
    if n < 1:
        raise DomainError("dimension must be >= 1")
    return TSet(Fraction(n) / (s1 + s2 - s), s == s1 or s == s2)


def capability_set_verdict(s, s1, s2, n: int, t=None) -> Verdict:
    """Verdict form of :func:`capability_t_set`; with ``t`` it decides membership."""
    ts = capability_t_set(s, s1, s2, n)
    f = {"s": _fmt(parse_rational(s)), "s1": _fmt(parse_rational(s1)), "s2": _fmt(parse_rational(s2)),
         "n": n, "t_set": ts.to_dict()}
    if t is None:
        row = Clause("T", f"t ∈ {ts}", True, "set only")
        return Verdict(True, "T", (row,), "capability-set", ("T",), f)
    t = exponent(t)
    f["t"] = str(t)
    ok = ts.contains(t)
    op = ">" if ts.lower_open else "≥"
    row = Clause("T", f"t {op} n/(s1+s2-s)", ok, f"t={t}, lower={_fmt(ts.lower)}")
    return Verdict(ok, "T" if ok else None, (row,), "capability-set", ("T",), f)


# ------------------------------------------------------------ fast boolean twins

def young_flags(r, r1, r2, s, s1, s2, n) -> tuple:
    """(A1, A2, A3, A4) as booleans from exact reciprocals and weights."""
    g = r + s / n
    g1 = r1 + s1 / n
    g2 = r2 + s2 / n
    le1 = s <= s1
    le2 = s <= s2
    ssum = s1 + s2
    a1 = (le1 and le2 and ssum >= 0 and g <= g1 and g <= g2 and g1 + g2 >= 1
          and 1 + max(g, ZERO) < max(g1, ZERO) + max(g2, ZERO)
          and (g != g1 or (r == r1 and s == s1))
          and (g != g2 or (r == r2 and s == s2))
          and (g1 + g2 != 1 or (1 - r1 == r2 and -s1 == s2)))
    a2 = (s == 0 and s1 == 0 and s2 == 0
          and ((r == r1 and r2 == 1) or (r == r2 and r1 == 1) or (r == 0 and r1 + r2 == 1)))
    a3 = (le1 and le2 and r1 + r2 == 1 and ssum == 0 and g < 0 and g1 >= 0 and g2 >= 0)
    a4 = (le1 and le2 and ssum >= 0 and 1 + g == g1 + g2 and r <= r1 + r2
          and g < g1 and g < g2 and g > 0
          and (r != 0 or (s < s1 and s < s2))
          and (r1 != 1 or (s < s1 and ssum > 0))
          and (r2 != 1 or (s < s2 and ssum > 0)))
    return a1, a2, a3, a4


def young_flags_of(g: YoungTuple) -> tuple:
    return young_flags(g.q.recip, g.q1.recip, g.q2.recip, g.s, g.s1, g.s2, g.n)


def frac_flags(r, rp, s, t, lam, n) -> tuple:
    """(C1, C3, C4) as booleans."""
    g = r + s / n
    gp = rp + t / n
    ln = lam / n
    st = s <= t
    c1 = (st and ln + max(g, ZERO) < max(gp, ZERO) and ln + g <= 1
          and (ln + g != 1 or (r == 0 and -s == lam - n)))
    c3 = st and rp == 1 and t == lam - n and g < 0
    c4 = (st and ln + g == gp and r <= rp and g > 0 and gp < 1
          and (s != t or (r != 0 and rp != 1)))
    return c1, c3, c4


def frac_flags_of(g: FracTuple) -> tuple:
    return frac_flags(g.q.recip, g.p.recip, g.s, g.t, g.lam, g.n)


# ------------------------------------------------------------ explain

def explain(g, kind: Optional[str] = None) -> Verdict:
    """Full clause trace for a tuple; the decider defaults by tuple type."""
    if kind is None:
        kind = "discrete-young" if isinstance(g, YoungTuple) else "frac-d"
    fn = DECIDERS.get(kind)
    if fn is None:
        raise DomainError(f"unknown decider kind {kind!r}")
    return fn(g)


DECIDERS: dict = {
    "discrete-young": discrete_young_holds,
    "power-young": power_young_holds,
    "bracket-young": bracket_young_holds,
    "mod-multiplier": multiplier_transfer_holds,
    "frac-d": frac_discrete_holds,
    "frac-c": frac_continuous_holds,
    "A1": cond_A1, "A2": cond_A2, "A3": cond_A3, "A4": cond_A4,
    "C1": cond_C1, "C3": cond_C3, "C4": cond_C4,
}
