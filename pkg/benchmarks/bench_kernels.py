"""Timing and parity comparison of the compiled kernels vs the numpy fallback.

Run:  python3 benchmarks/bench_kernels.py [--size 512] [--repeat 5]

Both backends are loaded side by side (the dispatch module only picks one,
so the fallback is imported directly) and every kernel is checked for
bit-identical output before timing.
"""
import argparse
import statistics
import time

import numpy as np

from mviqa.imgcore import _kernels_np
from mviqa.imgcore.kernels import BACKEND, _impl


def timeit(fn, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return min(samples), statistics.median(samples)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=512)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if BACKEND != "cython":
        raise SystemExit(
            "compiled backend not loaded (BACKEND=%r); build the extension first"
            % BACKEND
        )

    rng = np.random.default_rng(7)
    img = rng.random((args.size, args.size), dtype=np.float64)
    kernel = rng.random((7, 7))
    kernel /= kernel.sum()
    # sample grid for a slight rotation plus shift
    theta = 0.05
    yy, xx = np.mgrid[0 : args.size, 0 : args.size].astype(np.float64)
    ys = np.cos(theta) * yy - np.sin(theta) * xx + 1.5
    xs = np.sin(theta) * yy + np.cos(theta) * xx - 0.8

    cases = {
        "convolve2d 7x7": (
            lambda m: m.convolve2d(img, kernel),
        ),
        "warp_bilinear": (
            lambda m: m.warp_bilinear(img, ys, xs),
        ),
        "bilateral 5x5": (
            lambda m: m.bilateral(img, 2, 0.1, 2.0),
        ),
    }

    print(f"image {args.size}x{args.size}, repeat={args.repeat}, best-of shown\n")
    print(f"{'kernel':<16} {'cython':>10} {'python':>10} {'speedup':>8}  parity")
    for name, (call,) in cases.items():
        a = call(_impl)
        b = call(_kernels_np)
        parity = "exact" if np.array_equal(a, b) else "MISMATCH"
        t_cy, _ = timeit(lambda: call(_impl), args.repeat)
        t_py, _ = timeit(lambda: call(_kernels_np), args.repeat)
        print(
            f"{name:<16} {t_cy * 1e3:>8.2f}ms {t_py * 1e3:>8.2f}ms "
            f"{t_py / t_cy:>7.1f}x  {parity}"
        )
        if parity != "exact":
            raise SystemExit(f"{name}: backends disagree")


if __name__ == "__main__":
    main()
