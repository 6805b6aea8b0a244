"""Time the numba and numpy kernel paths against each other.

    python benchmarks/bench_kernels.py [--sizes 3 4 5] [--repeat 3]

Numba compile time is paid in a warm-up call and excluded from the timings.
"""

import argparse
import time

import numpy as np

from cnotperm import _kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--batch", type=int, default=1_000_000)
    args = parser.parse_args()

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    for b in backends:  # warm-up / JIT compile
        _kernels.bfs_distances(2, b)
        _kernels.invert_codes(np.array([9]), 2, b)
        _kernels.multiply_codes(np.array([9]), np.array([9]), 2, b)
        _kernels.check_distances(2, _kernels.bfs_distances(2, b), b)

    print(f"{'kernel':<10}{'n':>3}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    rng = np.random.default_rng(0)
    for n in args.sizes:
        dist = _kernels.bfs_distances(n)
        codes = rng.integers(0, 1 << (n * n), size=args.batch)
        other = rng.integers(0, 1 << (n * n), size=args.batch)
        jobs = {
            "bfs": lambda b: _kernels.bfs_distances(n, b),
            "check": lambda b: _kernels.check_distances(n, dist, b),
            "invert": lambda b: _kernels.invert_codes(codes, n, b),
            "multiply": lambda b: _kernels.multiply_codes(codes, other, n, b),
        }
        for name, job in jobs.items():
            results = {b: best_of(lambda: job(b), args.repeat) for b in backends}
            row = f"{name:<10}{n:>3}" + "".join(f"{results[b]:>11.4f}s" for b in backends)
            if "numba" in results:
                row += f"{results['numpy'] / results['numba']:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
