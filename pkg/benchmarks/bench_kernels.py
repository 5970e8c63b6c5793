"""Time the compiled and pure-Python direct kernels against the FFT path.

Usage: python3 benchmarks/bench_kernels.py [--sizes 64,256,1024] [--repeat 3] [--dim 1]
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from sharpconv import kernels


def _timed(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def run(sizes, repeat, dim, seed=0):
    rng = np.random.default_rng(seed)
    rows = []
    for L in sizes:
        shape = (L,) * dim
        f, g = rng.random(shape), rng.random(shape)
        d = (0,) * dim
        out_shape = tuple(2 * L - 1 for _ in range(dim))
        row = {"size": L, "dim": dim}
        results = {}
        for backend in kernels.available_backends():
            t, results[backend] = _timed(lambda b=backend: kernels.direct_window(f, g, d, out_shape, backend=b), repeat)
            row[backend] = t
        row["fft"], fft_out = _timed(lambda: kernels.fft_window(f, g, d, out_shape), repeat)
        ref = results[kernels.BACKEND]
        row["bit_identical"] = all(np.array_equal(ref, v) for v in results.values())
        row["fft_rel_err"] = float(np.max(np.abs(fft_out - ref)) / np.max(ref))
        rows.append(row)
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="64,256,1024", help="comma-separated side lengths")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--dim", type=int, choices=(1, 2), default=1)
    args = ap.parse_args(argv)
    sizes = [int(x) for x in args.sizes.split(",")]
    rows = run(sizes, args.repeat, args.dim)
    backends = kernels.available_backends()
    print(f"default backend: {kernels.BACKEND}")
    header = ["size"] + [f"{b}_s" for b in backends] + ["fft_s", "speedup", "bit_identical", "fft_rel_err"]
    print(" ".join(f"{h:>14}" for h in header))
    for r in rows:
        speed = r["python"] / r["cython"] if "cython" in r else float("nan")
        cells = [str(r["size"])] + [f"{r[b]:.3e}" for b in backends] + [f"{r['fft']:.3e}", f"{speed:.1f}x",
                                                                        str(r["bit_identical"]), f"{r['fft_rel_err']:.1e}"]
        print(" ".join(f"{c:>14}" for c in cells))
    return 0 if all(r["bit_identical"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
