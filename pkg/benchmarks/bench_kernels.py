"""Time the compiled and numpy displacement kernels on a distribution-sized workload.

    python3 benchmarks/bench_kernels.py [--points 20000] [--nrows 80] [--ncols 5]
"""
import argparse
import time

import numpy as np

from parityspace.kernels import backends


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=20000)
    ap.add_argument("--nrows", type=int, default=80)
    ap.add_argument("--ncols", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    alphas = (rng.uniform(-4, 4, args.points) + 1j * rng.uniform(-4, 4, args.points)) / np.sqrt(2)
    found = backends()
    results = {}
    for name, fn in found.items():
        secs, out = best_of(lambda: fn(alphas, args.nrows, args.ncols), args.repeat)
        results[name] = out
        rate = args.points / secs
        print(f"{name:7s} {secs * 1e3:9.1f} ms  {rate:12.0f} points/s")
    if len(results) == 2:
        diff = np.abs(results["cython"] - results["numpy"]).max()
        print(f"max |cython - numpy| = {diff:.2e}")
        t_c = best_of(lambda: found["cython"](alphas, args.nrows, args.ncols), args.repeat)[0]
        t_n = best_of(lambda: found["numpy"](alphas, args.nrows, args.ncols), args.repeat)[0]
        print(f"speedup {t_n / t_c:.1f}x")
    else:
        print("compiled kernel not built; only the numpy path is available")


if __name__ == "__main__":
    main()
