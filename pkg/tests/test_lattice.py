import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sharpconv import _kernels_py, kernels
from sharpconv.errors import BudgetError, DomainError
from sharpconv.families import box_pair, critical_pair
from sharpconv.index import YoungTuple
from sharpconv.lattice import LatticeFunction, convolve, embed, weighted_norm
from sharpconv.probes import ratio

BACKENDS = kernels.available_backends()


def rand_fn(rng, n, size, lo_range=5, dyn=1e6):
    shape = tuple(int(rng.integers(1, size + 1)) for _ in range(n))
    vals = rng.random(shape) * dyn ** rng.random(shape)
    vals[rng.random(shape) < 0.2] = 0.0
    vals.flat[0] = max(vals.flat[0], 1.0)
    lo = tuple(int(rng.integers(-lo_range, lo_range + 1)) for _ in range(n))
    return LatticeFunction(vals, lo)


def brute_convolve(f: LatticeFunction, g: LatticeFunction) -> dict:
    out = {}
    for ia in np.ndindex(f.shape):
        va = f.values[ia]
        for ib in np.ndindex(g.shape):
            k = tuple(f.lo[a] + ia[a] + g.lo[a] + ib[a] for a in range(f.n))
            out[k] = out.get(k, 0.0) + va * g.values[ib]
    return out


# ---------------------------------------------------------------- LatticeFunction

def test_trim_and_box():
    f = LatticeFunction([0, 0, 1, 2, 0], lo=(-2,))
    assert f.lo == (0,) and f.shape == (2,) and f.hi == (1,)
    assert f((1,)) == 2.0 and f((5,)) == 0.0


def test_empty_function():
    f = LatticeFunction(np.zeros((3, 3)))
    assert f.is_empty and weighted_norm(f, 2, 0) == 0.0


@pytest.mark.parametrize("bad", [[-1.0, 1.0], [np.nan], [np.inf]])
def test_rejects_bad_values(bad):
    with pytest.raises(DomainError):
        LatticeFunction(bad)


def test_values_read_only():
    f = LatticeFunction([1.0, 2.0])
    with pytest.raises(ValueError):
        f.values[0] = 3.0


def test_three_dimensional_rejected():
    with pytest.raises(DomainError):
        LatticeFunction(np.ones((2, 2, 2)))


# ---------------------------------------------------------------- weighted norms

@pytest.mark.parametrize("p, s", [(1, 0), (2, 3), ("inf", -2), ("4/3", F(1, 2))])
def test_norm_of_delta_at_origin(p, s):
    assert weighted_norm(LatticeFunction.delta((0,)), p, s) == 1.0
    assert weighted_norm(LatticeFunction.delta((0, 0)), p, s) == 1.0


def test_norm_of_shifted_delta():
    assert weighted_norm(LatticeFunction.delta((3,)), "inf", 2) == 10.0


@pytest.mark.parametrize("N", [1, 5, 40])
def test_norm_of_box(N):
    assert weighted_norm(LatticeFunction.cube_indicator(N, 1), 1, 0) == 2 * N + 1


def test_norm_matches_direct_formula():
    rng = np.random.default_rng(3)
    f = rand_fn(rng, 2, 6, dyn=10)
    k = f.coords()
    sq = (k[0] ** 2 + k[1] ** 2).astype(float)
    for p, s in ((2.0, 0.5), (3.0, -1.0), (1.5, 2.0)):
        ref = np.sum(f.values ** p * (1 + sq) ** (p * s / 2)) ** (1 / p)
        assert weighted_norm(f, F(p).limit_denominator(), F(s)) == pytest.approx(ref, rel=1e-12)


@settings(max_examples=60)
@given(st.integers(0, 10_000), st.floats(min_value=1e-3, max_value=1e3))
def test_norm_homogeneous(seed, c):
    f = rand_fn(np.random.default_rng(seed), 1, 20)
    for p, s in (("2", 1), ("1", -1), ("inf", 0), ("3/2", F(1, 3))):
        assert weighted_norm(f.scaled(c), p, s) == pytest.approx(c * weighted_norm(f, p, s), rel=1e-12)


# ---------------------------------------------------------------- convolution

def test_delta_identity():
    d = LatticeFunction.delta((0,))
    assert convolve(d, d).identical(d)
    d2 = LatticeFunction.delta((0, 0))
    assert convolve(d2, d2).identical(d2)


@pytest.mark.parametrize("N", [1, 3, 10])
def test_box_window_count(N):
    a, b = box_pair(N, 1)
    c = convolve(a, b)
    for k in range(-N, N + 1):
        assert c((k,)) == 2 * N + 1


@pytest.mark.parametrize("N", [2, 4, 8])
@pytest.mark.parametrize("n", [1, 2])
def test_box_lower_bound(N, n):
    a, b = box_pair(N, n)
    c = convolve(a, b)
    sup = np.max(np.abs(np.stack(c.coords())), axis=0)
    assert np.all(c.values[sup <= N] >= N ** n)


def test_box_pair_counts():
    a, b = box_pair(1, 1)
    assert a.lo == (-1,) and a.shape == (3,) and b.lo == (-2,) and b.shape == (5,)
    a, b = box_pair(4, 2)
    assert int(np.count_nonzero(a.values)) == 81 and int(np.count_nonzero(b.values)) == 289


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("n", [1, 2])
def test_direct_matches_brute_force(seed, n):
    rng = np.random.default_rng(seed)
    f, g = rand_fn(rng, n, 7, dyn=100), rand_fn(rng, n, 5, dyn=100)
    c = convolve(f, g, method="direct")
    ref = brute_convolve(f, g)
    for k, v in ref.items():
        assert c(k) == pytest.approx(v, rel=1e-13, abs=1e-300)


@settings(max_examples=40)
@given(st.integers(0, 10_000), st.sampled_from([1, 2]))
def test_fft_agrees_with_direct(seed, n):
    rng = np.random.default_rng(seed)
    f, g = rand_fn(rng, n, 40 if n == 1 else 12), rand_fn(rng, n, 40 if n == 1 else 12)
    d = convolve(f, g, method="direct")
    h = convolve(f, g, method="fft")
    scale = float(np.max(d.values))
    box_lo = tuple(min(a, b) for a, b in zip(d.lo, h.lo))
    shp = tuple(max(a + s, b + t) - l for a, s, b, t, l in zip(d.lo, d.shape, h.lo, h.shape, box_lo))
    dv, hv = embed(d, box_lo, shp), embed(h, box_lo, shp)
    # relative to the output scale: FFT error is absolute at the epsilon * max level
    assert np.max(np.abs(dv - hv)) <= 1e-9 * scale


@settings(max_examples=40)
@given(st.integers(0, 10_000), st.sampled_from([1, 2]))
def test_commutative_bitwise(seed, n):
    rng = np.random.default_rng(seed)
    f, g = rand_fn(rng, n, 15), rand_fn(rng, n, 15)
    assert convolve(f, g, method="direct").identical(convolve(g, f, method="direct"))


@settings(max_examples=40)
@given(st.integers(0, 10_000), st.floats(min_value=0.01, max_value=100))
def test_linear(seed, c):
    rng = np.random.default_rng(seed)
    f, h, g = rand_fn(rng, 1, 12, lo_range=0), rand_fn(rng, 1, 12, lo_range=0), rand_fn(rng, 1, 9)
    L = max(f.hi[0], h.hi[0]) + 1 - min(f.lo[0], h.lo[0])
    lo = (min(f.lo[0], h.lo[0]),)
    fh = LatticeFunction(embed(f, lo, (L,)) * c + embed(h, lo, (L,)), lo)
    lhs = convolve(fh, g, method="direct")
    a, b = convolve(f, g, method="direct"), convolve(h, g, method="direct")
    for k in range(lhs.lo[0], lhs.hi[0] + 1):
        ref = c * a((k,)) + b((k,))
        assert lhs((k,)) == pytest.approx(ref, rel=1e-12, abs=1e-300)


def test_budget_error():
    a, b = box_pair(50, 2)
    with pytest.raises(BudgetError):
        convolve(a, b, config={"max_cells": 1000})


def test_dimension_mismatch():
    with pytest.raises(DomainError):
        convolve(LatticeFunction.delta((0,)), LatticeFunction.delta((0, 0)))


# ---------------------------------------------------------------- backends

@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
@settings(max_examples=40)
@given(st.integers(0, 10_000), st.sampled_from([1, 2]))
def test_backends_bit_identical(seed, n):
    rng = np.random.default_rng(seed)
    f, g = rand_fn(rng, n, 30 if n == 1 else 9), rand_fn(rng, n, 30 if n == 1 else 9)
    a = convolve(f, g, method="direct", backend="cython")
    b = convolve(f, g, method="direct", backend="python")
    assert a.identical(b)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
def test_windowed_backends_bit_identical():
    rng = np.random.default_rng(11)
    f, g = rng.random(37), rng.random(13)
    from sharpconv import _ckernels

    for d, L in ((0, 49), (5, 20), (30, 40), (-3, 10)):
        assert _ckernels.conv_window_1d(f, g, d, L).tobytes() == _kernels_py.conv_window_1d(f, g, d, L).tobytes()


def test_backend_selection():
    assert kernels.BACKEND in BACKENDS
    with pytest.raises(ValueError):
        kernels.direct_window(np.ones(2), np.ones(2), (0,), (3,), backend="fortran")


# ---------------------------------------------------------------- ratios and families

def test_ratio_of_deltas_is_one():
    d = LatticeFunction.delta((0,))
    for tup in (("2", "4/3", "4/3", 0, 0, 0, 1), ("inf", 1, 1, 2, -1, 3, 1)):
        assert ratio(d, d, YoungTuple(*tup)) == 1.0


@settings(max_examples=60)
@given(st.integers(0, 10_000), st.sampled_from([("2", "4/3", "4/3"), ("inf", "2", "2"), ("1", "1", "1"),
                                                 ("3", "3/2", "3/2"), ("4", "2", "4/3")]))
def test_young_constant_one(seed, qs):
    rng = np.random.default_rng(seed)
    g = YoungTuple(*qs, 0, 0, 0, 1)
    a, b = rand_fn(rng, 1, 30), rand_fn(rng, 1, 30)
    assert ratio(a, b, g, method="direct") <= 1 + 1e-12


@settings(max_examples=30)
@given(st.integers(0, 10_000))
def test_ratio_swap_exact(seed):
    rng = np.random.default_rng(seed)
    a, b = rand_fn(rng, 1, 20), rand_fn(rng, 1, 20)
    g = YoungTuple("3", "2", "5/4", F(1, 3), F(1, 2), -1, 1)
    assert ratio(a, b, g, method="direct") == ratio(b, a, g.swapped(), method="direct")


def test_critical_pair_values():
    g = YoungTuple("2", "4/3", "4/3", 0, 0, 0, 1)
    a, b = critical_pair(16, g)
    assert a.lo == (-16,) and a((3,)) == pytest.approx(10 ** (-3 / 8), rel=1e-15)
    a2, _ = critical_pair(2, g)
    assert a2.shape == (5,) and a2((2,)) == pytest.approx(5 ** (-3 / 8), rel=1e-15)
    with pytest.raises(DomainError):
        critical_pair(1, g)


def test_critical_norms_log_growth():
    g = YoungTuple("2", "4/3", "4/3", 0, 0, 0, 1)
    vals = []
    for N in (2 ** 5, 2 ** 8, 2 ** 12):
        a, _ = critical_pair(N, g)
        vals.append(weighted_norm(a, g.q1, g.s1) / math.log(N) ** 0.75)
    assert max(vals) / min(vals) < 1.25
