"""Benchmark: compiled vs pure-Python normal-form kernels.

Run:  python3 benchmarks/bench_kernels.py
"""

import random
import time


def _workload(rng, n, k, bits):
    lo, hi = -(2**bits), 2**bits
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(k)]


def bench(mod, cases, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for cols, n in cases:
            mod.hnf_columns(cols, n)
            mod.snf_diagonal([list(r) for r in zip(*cols)])
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    from latmod import _hnf_py

    try:
        from latmod import _hnf_c
    except ImportError:
        _hnf_c = None

    rng = random.Random(2026)
    scenarios = [
        ("small dense (4x4, 8-bit)", [( _workload(rng, 4, 4, 8), 4) for _ in range(400)]),
        ("medium (8x8, 16-bit)", [(_workload(rng, 8, 8, 16), 8) for _ in range(10)]),
        ("large entries (5x5, 256-bit)", [(_workload(rng, 5, 5, 256), 5) for _ in range(100)]),
    ]
    print("%-32s %12s %12s %8s" % ("scenario", "python (s)", "cython (s)", "speedup"))
    for name, cases in scenarios:
        t_py = bench(_hnf_py, cases)
        if _hnf_c is None:
            print("%-32s %12.4f %12s %8s" % (name, t_py, "n/a", "n/a"))
            continue
        t_c = bench(_hnf_c, cases)
        # Sanity: identical outputs on the first case.
        cols, n = cases[0]
        assert _hnf_c.hnf_columns(cols, n) == _hnf_py.hnf_columns(cols, n)
        print("%-32s %12.4f %12.4f %7.2fx" % (name, t_py, t_c, t_py / t_c))


if __name__ == "__main__":
    main()
