"""Benchmark: compiled vs pure-Python reduction kernel.

Builds alpha filtrations of random 2D clouds of growing size and times the
full persistence reduction (clearing on) under both backends. Run as

    python3 benchmarks/bench_reduction.py [max_points]
"""

import sys
import time

import numpy as np

from stablevol import _reduction_py, kernels
from stablevol.alpha import alpha_filtration
from stablevol.persistence import boundary_matrix

try:
    from stablevol import _speedups
except ImportError:
    _speedups = None


def time_backend(fn, cols, order, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(cols, order, True, False)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    max_points = int(sys.argv[1]) if len(sys.argv) > 1 else 1600
    rng = np.random.default_rng(0)
    sizes = [n for n in (100, 200, 400, 800, 1600, 3200) if n <= max_points]
    print(f"{'points':>7} {'simplices':>9} {'pure-py':>10} {'compiled':>10} {'speedup':>8}")
    for n in sizes:
        pts = rng.random((n, 2)) * np.sqrt(n)
        filt = alpha_filtration(pts)
        cols = boundary_matrix(filt.order)
        order = sorted(
            range(len(cols)),
            key=lambda j: (-len(filt.cx.simplices[filt.order.order[j]]), j),
        )
        t_py = time_backend(_reduction_py.reduce_columns, cols, order)
        if _speedups is not None:
            t_c = time_backend(_speedups.reduce_columns, cols, order)
            a = _reduction_py.reduce_columns(cols, order, True, False)
            b = _speedups.reduce_columns(cols, order, True, False)
            assert a == b, "backends disagree"
            print(f"{n:>7} {len(cols):>9} {t_py:>9.4f}s {t_c:>9.4f}s {t_py / t_c:>7.1f}x")
        else:
            print(f"{n:>7} {len(cols):>9} {t_py:>9.4f}s {'n/a':>10} {'':>8}")
    print(f"\nactive backend at import: {kernels.active_backend()}")


if __name__ == "__main__":
    main()
