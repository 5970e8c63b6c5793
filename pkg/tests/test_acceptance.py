"""Acceptance criteria AC1..AC12, one test per criterion.

Each test prints a single ``ACn PASS|FAIL: ...`` line to the terminal (outside
pytest's capture) and then asserts. Run standalone with
``python3 tests/test_acceptance.py`` to see only these lines.
"""

import csv
import io
import math
import time
from contextlib import redirect_stdout
from fractions import Fraction as F

import pytest

from sharpconv import regions as R
from sharpconv import sampling
from sharpconv.capability import capability_sup_probe
from sharpconv.cli import main as cli_main
from sharpconv.families import critical_pair
from sharpconv.fitting import BOUNDED, DIVERGING, lsq_slope
from sharpconv.index import ExtendedExponent, FracTuple, YoungTuple, dilation_exponent, dual_young_tuple
from sharpconv.lattice import weighted_norm
from sharpconv.probes import box_growth_exponent, growth_probe, dilation_probe
from sharpconv.riesz import (
    apply_frac,
    flat_sum,
    frac_growth_probe,
    frac_log_family,
)

SAMPLE = 100_000
SEED = 20240601

# pinned tolerances
AC1_SECONDS = 10.0
AC5_SECONDS = 30.0
AC5_BOX_TOL = 0.1
AC5_FLAT_TOL = 0.02
YOUNG_ONE = 1 + 1e-12
AC6_VARIATION = 0.25
AC7_GROWTH = 2.0
AC8_SUM_TOL = 0.05
AC8_PROBE_TOL = 0.1
AC9_VARIATION = 0.25
AC11_TOL = 0.05


@pytest.fixture
def emit(capsys):
    def _emit(ac, ok, detail):
        with capsys.disabled():
            print(f"\n{ac} {'PASS' if ok else 'FAIL'}: {detail}")
        return ok
    return _emit


def _rel_variation(xs):
    return max(xs) / min(xs) - 1.0


@pytest.fixture(scope="module")
def young_sample():
    t0 = time.perf_counter()
    raw = list(sampling.young_sample(SAMPLE, SEED))
    flags = [R.young_flags(*x) for x in raw]
    return raw, flags, time.perf_counter() - t0


@pytest.fixture(scope="module")
def frac_sample():
    return list(sampling.frac_sample(SAMPLE, SEED))


def _swap(x):
    r, r1, r2, s, s1, s2, n = x
    return r, r2, r1, s, s2, s1, n


def _dual(x):
    # (q, q1, q2, s, s1, s2) -> (q1', q', q2, -s1, -s, s2) in reciprocals
    r, r1, r2, s, s1, s2, n = x
    return 1 - r1, 1 - r, r2, -s1, -s, s2, n


def _frac_dual(x):
    # (q, p, s, t) -> (p', q', -t, -s)
    r, rp, s, t, lam, n = x
    return 1 - rp, 1 - r, -t, -s, lam, n


def _bracket_pre(x):
    r, r1, r2 = x[:3]
    return 1 + r >= r1 + r2


def _as_young(x):
    r, r1, r2, s, s1, s2, n = x
    return YoungTuple(ExtendedExponent(r), ExtendedExponent(r1), ExtendedExponent(r2), s, s1, s2, n)


def _as_frac(x):
    r, rp, s, t, lam, n = x
    return FracTuple(ExtendedExponent(r), ExtendedExponent(rp), s, t, lam, n)


# ---------------------------------------------------------------- AC1

def test_ac1_decider_partition(young_sample, emit):
    raw, flags, elapsed = young_sample
    multi = sum(1 for f in flags if sum(f) > 1)
    counts = [sum(f[i] for f in flags) for i in range(4)]
    # the fast twins must agree with the traced deciders on a subsample
    mismatch = 0
    for x, f in zip(raw[::200], flags[::200]):
        g = _as_young(x)
        traced = tuple(fn(g).holds for fn in (R.cond_A1, R.cond_A2, R.cond_A3, R.cond_A4))
        mismatch += traced != f
    ok = multi == 0 and elapsed < AC1_SECONDS and mismatch == 0 and len(raw) >= 100_000
    emit("AC1", ok, f"{len(raw)} tuples, {multi} multi-matches, counts A1..A4={counts}, "
                    f"{elapsed:.2f}s (< {AC1_SECONDS}s), traced subsample mismatches={mismatch}")
    assert ok


# ---------------------------------------------------------------- AC2

def test_ac2_duality_swap(young_sample, frac_sample, emit):
    raw, flags, _ = young_sample
    bad_swap = bad_dual = 0
    for x, f in zip(raw, flags):
        d = any(f)
        bad_swap += any(R.young_flags(*_swap(x))) != d
        bad_dual += any(R.young_flags(*_dual(x))) != d
    bad_frac = sum(any(R.frac_flags(*x)) != any(R.frac_flags(*_frac_dual(x))) for x in frac_sample)
    # traced check of the library dual map on a subsample
    bad_traced = 0
    for x in raw[::500]:
        g = _as_young(x)
        bad_traced += R.discrete_young_holds(dual_young_tuple(g)).holds != R.discrete_young_holds(g).holds
    ok = bad_swap == bad_dual == bad_frac == bad_traced == 0
    emit("AC2", ok, f"swap violations={bad_swap}, dual violations={bad_dual}, frac dual violations={bad_frac}, "
                    f"traced subsample violations={bad_traced}")
    assert ok


# ---------------------------------------------------------------- AC3

def test_ac3_nesting(young_sample, frac_sample, emit):
    raw, flags, _ = young_sample
    bad_pb = bad_bd = 0
    for x, (a1, a2, a3, a4) in zip(raw, flags):
        power = a2 or a4
        disc = a1 or a2 or a3 or a4
        bracket = _bracket_pre(x) and disc
        bad_pb += power and not bracket
        bad_bd += bracket and not disc
    bad_frac = 0
    for x in frac_sample:
        c1, c3, c4 = R.frac_flags(*x)
        bad_frac += c4 and not (c1 or c3 or c4)
    bad_traced = 0
    for x in raw[::500]:
        g = _as_young(x)
        p, b, d = R.power_young_holds(g).holds, R.bracket_young_holds(g).holds, R.discrete_young_holds(g).holds
        bad_traced += (p and not b) or (b and not d)
    for x in frac_sample[::500]:
        g = _as_frac(x)
        bad_traced += R.frac_continuous_holds(g).holds and not R.frac_discrete_holds(g).holds
    ok = bad_pb == bad_bd == bad_frac == bad_traced == 0
    emit("AC3", ok, f"power-not-bracket={bad_pb}, bracket-not-discrete={bad_bd}, frac-c-not-frac-d={bad_frac}, "
                    f"traced subsample violations={bad_traced}")
    assert ok


# ---------------------------------------------------------------- AC4

def test_ac4_unweighted_consistency(emit):
    grid = [F(i, 12) for i in range(13)]
    bad_d = bad_c = cells = 0
    for n in (1, 2, 3):
        for r in grid:
            for r1 in grid:
                for r2 in grid:
                    e = [ExtendedExponent(x) for x in (r, r1, r2)]
                    g = YoungTuple(*e, 0, 0, 0, n)
                    bad_d += R.discrete_young_holds(g).holds != R.unweighted_discrete_young_holds(*e).holds
                    bad_c += R.power_young_holds(g).holds != R.unweighted_continuous_young_holds(*e).holds
                    cells += 1
    ok = bad_d == bad_c == 0
    emit("AC4", ok, f"{cells} grid cells (step 1/12, n=1..3), discrete mismatches={bad_d}, "
                    f"continuous mismatches={bad_c}")
    assert ok


# ---------------------------------------------------------------- AC5

def test_ac5_box_rate(emit):
    sched = [2 ** k for k in range(4, 11)]
    t0 = time.perf_counter()
    bad = growth_probe(YoungTuple("2", "2", "2", 0, 0, 0, 1), "box", sched, method="fft")
    classical = growth_probe(YoungTuple("2", "4/3", "4/3", 0, 0, 0, 1), "box", sched, method="fft")
    elapsed = time.perf_counter() - t0
    alpha = float(box_growth_exponent(YoungTuple("2", "2", "2", 0, 0, 0, 1)))
    ok = (abs(bad.fit_exponent - alpha) <= AC5_BOX_TOL and abs(classical.fit_exponent) <= AC5_FLAT_TOL
          and max(classical.ratios) <= YOUNG_ONE and elapsed < AC5_SECONDS)
    emit("AC5", ok, f"(2,2,2) fit={bad.fit_exponent:.4f} vs alpha={alpha} (+-{AC5_BOX_TOL}); classical fit="
                    f"{classical.fit_exponent:.2e} (+-{AC5_FLAT_TOL}), max ratio={max(classical.ratios):.15f}; "
                    f"{elapsed:.2f}s (< {AC5_SECONDS}s)")
    assert ok


# ---------------------------------------------------------------- AC6

AC6_TUPLES = [
    ("2", "4/3", "4/3", 0, 0, 0, 1),
    ("inf", "2", "2", 0, 0, 0, 1),
    ("3", "3/2", "2", F(1, 6), F(1, 3), 0, 1),
    ("4", "2", "4/3", F(1, 2), F(1, 2), 0, 1),
]


def test_ac6_critical_norms(emit):
    worst = 0.0
    parts = []
    for tup in AC6_TUPLES:
        g = YoungTuple(*tup)
        assert dilation_exponent(g) == 0
        vals = []
        for k in range(5, 13):
            N = 2 ** k
            a, _ = critical_pair(N, g)
            vals.append(weighted_norm(a, g.q1, g.s1) / math.log(N) ** float(g.q1.recip))
        var = _rel_variation(vals)
        worst = max(worst, var)
        parts.append(f"{g}: {var:.3f}")
    ok = worst < AC6_VARIATION
    emit("AC6", ok, f"max variation of ||a_N||/(ln N)^(1/q1) over N=2^5..2^12 = {worst:.3f} "
                    f"(< {AC6_VARIATION}); " + "; ".join(parts))
    assert ok


# ---------------------------------------------------------------- AC7

def test_ac7_log_pair_divergence(emit):
    g = YoungTuple("inf", "inf", "32", F(1, 8), F(31, 32), F(1, 8), 1)
    sched = [2 ** k for k in range(4, 15)]
    rep = growth_probe(g, "log", sched)
    growth = rep.ratios[-1] / rep.ratios[0]
    ok = rep.extras["strictly_increasing"] and growth >= AC7_GROWTH
    emit("AC7", ok, f"{g} log pair, N=2^4..2^14: strictly increasing={rep.extras['strictly_increasing']}, "
                    f"final/first={growth:.3f} (>= {AC7_GROWTH}), denominator tail inflation <= {rep.tail_bound:.2e}")
    assert ok


# ---------------------------------------------------------------- AC8

def test_ac8_riesz_flat(emit):
    sched = [2 ** k for k in range(10, 21)]
    upper = sched[len(sched) // 2:]
    slopes = {}
    for lam in (0.25, 0.5, 0.75):
        sums = [flat_sum(N, lam) for N in upper]
        slopes[lam] = lsq_slope([math.log(N) for N in upper], [math.log(S) for S in sums])
    bad = frac_growth_probe(FracTuple("2", "2", 0, 0, F(1, 2), 1), "flat")
    hls = frac_growth_probe(FracTuple("4", "4/3", 0, 0, F(1, 2), 1), "flat")
    ok = (all(abs(slopes[lam] - lam) <= AC8_SUM_TOL for lam in slopes)
          and bad.verdict == DIVERGING and abs(bad.fit_exponent - 0.5) <= AC8_PROBE_TOL
          and hls.verdict == BOUNDED)
    emit("AC8", ok, "flat-sum exponents " + ", ".join(f"lam={k}: {v:.4f}" for k, v in slopes.items())
         + f" (+-{AC8_SUM_TOL}); (2,2,0,0,1/2,1) {bad.verdict} fit={bad.fit_exponent:.4f} (0.5+-{AC8_PROBE_TOL}); "
           f"HLS {hls.verdict} fit={hls.fit_exponent:.4f}")
    assert ok


# ---------------------------------------------------------------- AC9

def test_ac9_riesz_log_families(emit):
    hls = FracTuple("4", "4/3", 0, 0, F(1, 2), 1)
    shifted = FracTuple("3", "3/2", F(1, 6), F(1, 6), F(1, 2), 1)  # another point on the C4 line
    worst = 0.0
    numer_ok = True
    for g in (hls, shifted):
        norms, lows = [], []
        for k in range(5, 13):
            N = 2 ** k
            f = frac_log_family(N, g, "f")
            norms.append(weighted_norm(f, g.p, g.t) / math.log(N) ** float(g.p.recip))
            if k <= 10:
                out = apply_frac(f, g.lam, out_box=((-N,), (2 * N + 1,)))
                lows.append(weighted_norm(out, g.q, g.s) / math.log(N) ** float(g.q.recip))
        worst = max(worst, _rel_variation(norms))
        # lower bound ||I f_N|| >= c (ln N)^(1/q): the normalized numerator must not decay
        numer_ok &= min(lows) >= 0.9 * lows[0]
    viol = FracTuple("inf", "2", F(1, 4), F(1, 4), F(1, 2), 1)  # s = t, q = inf, 1/p = lambda/n
    rep = frac_growth_probe(viol, "log-g")
    dev = rep.extras["g_norm_max_rel_dev"]
    ok = worst < AC9_VARIATION and numer_ok and rep.extras["strictly_increasing"] and dev < AC9_VARIATION
    emit("AC9", ok, f"f_N norm/(ln N)^(1/p) variation={worst:.3f} (< {AC9_VARIATION}), numerator lower bound "
                    f"holds={numer_ok}; log-g on {viol}: strictly increasing={rep.extras['strictly_increasing']}, "
                    f"max |g_N norm - median|/median={dev:.3f} (< {AC9_VARIATION})")
    assert ok


# ---------------------------------------------------------------- AC10

AC10_WEIGHTS = (F(1, 2), F(1), F(3, 2), F(2))


def _ac10_grid():
    pts = []
    for s in AC10_WEIGHTS:
        for s1 in AC10_WEIGHTS:
            for s2 in AC10_WEIGHTS:
                if not (s <= s1 and s <= s2):
                    continue
                lo = F(1) / (s1 + s2 - s)
                for t in (lo / 2, lo - F(1, 10), lo + F(1, 10), 2 * lo, lo + 1, None):
                    pts.append((s, s1, s2, "inf" if t is None else t))
    return pts


def _texp(t):
    return t if t == "inf" else str(t)


def test_ac10_capability_agreement(emit):
    grid = _ac10_grid()
    bad = []
    for s, s1, s2, t in grid:
        rep = capability_sup_probe(s, s1, s2, _texp(t))
        if not rep.extras["agrees"]:
            bad.append((s, s1, s2, t, rep.verdict, rep.extras["expected"]))
    endpoints = [(F(1), F(1), F(1)), (F(1, 2), F(1, 2), F(1)), (F(1), F(1), F(2)),
                 (F(1, 2), F(1, 2), F(3, 2)), (F(3, 2), F(3, 2), F(2))]
    end_bad = []
    for s, s1, s2 in endpoints:
        rep = capability_sup_probe(s, s1, s2, str(F(1) / s2))
        if not (rep.verdict == DIVERGING and rep.extras["log_fit"]):
            end_bad.append((s, s1, s2))
    ok = not bad and not end_bad
    emit("AC10", ok, f"{len(grid)} grid points (weights in {{1/2,1,3/2,2}}, t-margin >= 1/10), "
                     f"{len(bad)} disagreements; open endpoints t=n/s2 with s=s1: "
                     f"{len(endpoints) - len(end_bad)}/{len(endpoints)} Diverging with log-fit flag")
    assert ok, (bad, end_bad)


# ---------------------------------------------------------------- AC11

AC11_TUPLES = [
    ("2", "4/3", "4/3", 0, 0, 0, 1),
    ("2", "2", "2", 0, 0, 0, 1),
    ("inf", "2", "5/2", F(1, 10), F(3, 10), F(3, 10), 1),
    ("2", "4/3", "4/3", F(1, 4), F(1, 4), F(1, 4), 1),
    ("2", "2", "2", 0, 0, 0, 2),
    ("inf", "2", "2", 0, 0, 0, 2),
]


def test_ac11_dilation(emit):
    parts, worst, signs = [], 0.0, set()
    for tup in AC11_TUPLES:
        g = YoungTuple(*tup)
        rep = dilation_probe(g)
        pred = -float(dilation_exponent(g))
        signs.add((pred > 0) - (pred < 0))
        err = abs(rep.fit_exponent - pred)
        worst = max(worst, err)
        parts.append(f"{g}: {rep.fit_exponent:+.4f} vs {pred:+.4f}")
    ok = worst <= AC11_TOL and signs == {-1, 0, 1} and len(AC11_TUPLES) >= 5
    emit("AC11", ok, f"max |slope + dilation_exponent| = {worst:.2e} (<= {AC11_TOL}) over {len(AC11_TUPLES)} "
                     "tuples; " + "; ".join(parts))
    assert ok


# ---------------------------------------------------------------- AC12

def _cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(argv)
    return code, buf.getvalue()


def test_ac12_determinism(emit):
    runs = {
        "young box": lambda: growth_probe(YoungTuple("2", "2", "2", 0, 0, 0, 1), "box").to_json(),
        "young log": lambda: growth_probe(YoungTuple("inf", "4", "2", F(1, 8), F(1, 4), F(1, 8), 1), "log",
                                          [16, 32, 64, 128, 256]).to_json(),
        "riesz log-g": lambda: frac_growth_probe(FracTuple("inf", "2", F(1, 4), F(1, 4), F(1, 2), 1), "log-g",
                                                 [16, 32, 64, 128]).to_json(),
        "capability": lambda: capability_sup_probe(1, 1, 1, "1").to_json(),
        "dilation": lambda: dilation_probe(YoungTuple("2", "2", "2", 0, 0, 0, 2)).to_json(),
        "parallel box": lambda: growth_probe(YoungTuple("4", "2", "2", 0, 0, 0, 2), "box",
                                             config={"workers": 3}).to_json(),
    }
    diffs = [name for name, fn in runs.items() if fn() != fn()]
    sweep = ["sweep", "--kind", "discrete-young", "--axis", "q=0:1:1/6", "--axis", "q1=0:1:1/6",
             "--axis", "s=-1:1:1/2", "--q2", "2", "--check", "duality", "--check", "exclusivity"]
    a, b = _cli(sweep), _cli(sweep)
    c = _cli(sweep + ["--workers", "3"])
    if not (a == b == c):
        diffs.append("sweep")
    rows = len(list(csv.reader(io.StringIO(a[1])))) - 1
    ok = not diffs
    emit("AC12", ok, f"{len(runs)} probe reports and a {rows}-row sweep (1 and 3 workers) repeated: "
                     f"non-identical outputs={diffs or 'none'}")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
