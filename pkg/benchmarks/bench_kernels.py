"""Compare the numba and numpy box-search backends on the same workloads.

Run directly:  python3 benchmarks/bench_kernels.py

Prints per-backend wall time for square enumerations over increasing box
radii and checks that both backends return identical results.
"""

import os
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from mukailat import kernels  # noqa: E402


GRAMS = {
    "U+U (rank 4)": ((0, 1, 0, 0), (1, 0, 0, 0),
                     (0, 0, 0, 1), (0, 0, 1, 0)),
    "U^3+<-6> (rank 7)": tuple(
        tuple({(0, 1): 1, (1, 0): 1, (2, 3): 1, (3, 2): 1,
               (4, 5): 1, (5, 4): 1, (6, 6): -6}.get((i, j), 0)
              for j in range(7)) for i in range(7)),
}


def time_backend(fn, vecs, g, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(vecs, g)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    if not kernels._HAVE_NUMBA:
        print("numba unavailable; nothing to compare")
        return 1
    print("%-20s %6s %10s %12s %12s %8s" %
          ("gram", "radius", "vectors", "numba", "numpy", "speedup"))
    for name, gram in GRAMS.items():
        n = len(gram)
        radii = (4, 6, 8) if n == 4 else (2, 3)
        g = np.asarray(gram, dtype=np.int64)
        for r in radii:
            vecs = kernels._box(n, r)
            # warm the JIT before timing
            kernels._squares_numba(vecs[:16], g)
            tb, outb = time_backend(kernels._squares_numba, vecs, g)
            tn, outn = time_backend(kernels._squares_numpy, vecs, g)
            assert (outb == outn).all(), "backend mismatch"
            print("%-20s %6d %10d %10.4fs %10.4fs %7.1fx" %
                  (name, r, len(vecs), tb, tn, tn / tb))
    return 0


if __name__ == "__main__":
    sys.exit(main())
