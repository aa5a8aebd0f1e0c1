#!/usr/bin/env python3
"""Time the compiled Jacobi kernel against the pure-Python fallback.

Both backends run the same cyclic-rotation algorithm on the same random
Hermitian matrices; this prints per-size wall times, the speedup, and the
worst eigenvalue disagreement as a sanity check.

    python3 benchmarks/bench_jacobi.py --sizes 16,32,64,128 --repeats 3
"""

import argparse
import time

import numpy as np

from fockwitness import _jacobi_py

try:
    from fockwitness import _jacobi_cy
except ImportError:
    _jacobi_cy = None


def random_hermitian(rng, n):
    raw = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (raw + raw.conj().T) / 2


def time_backend(backend, matrices, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for m in matrices:
            backend.jacobi_diagonalize(m.copy())
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="16,32,64,128",
                        help="comma-separated matrix dimensions")
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats; the best run counts")
    parser.add_argument("--matrices", type=int, default=5,
                        help="matrices per size")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if _jacobi_cy is None:
        print("compiled backend unavailable; timing the fallback only")

    rng = np.random.default_rng(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]

    header = f"{'n':>5} {'pure [s]':>10}"
    if _jacobi_cy is not None:
        header += f" {'cython [s]':>11} {'speedup':>8} {'max |dλ|':>9}"
    print(header)
    for n in sizes:
        matrices = [random_hermitian(rng, n) for _ in range(args.matrices)]
        t_py = time_backend(_jacobi_py, matrices, args.repeats)
        line = f"{n:>5} {t_py:>10.4f}"
        if _jacobi_cy is not None:
            t_cy = time_backend(_jacobi_cy, matrices, args.repeats)
            gap = 0.0
            for m in matrices:
                d_py, _, _ = _jacobi_py.jacobi_diagonalize(m.copy())
                d_cy, _, _ = _jacobi_cy.jacobi_diagonalize(m.copy())
                gap = max(gap, float(np.max(np.abs(
                    np.sort(np.asarray(d_py)) - np.sort(np.asarray(d_cy))))))
            line += f" {t_cy:>11.4f} {t_py / t_cy:>7.1f}x {gap:>9.1e}"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
