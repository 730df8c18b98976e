"""Time the numba kernels against the numpy fallbacks on representative inputs.

Run with ``python3 benchmarks/bench_kernels.py``.  Numba must be installed
for the first column; compile time is excluded by a warm-up call.
"""
import time

import numpy as np

from fvoa import _kernels


def _time(fn, *args, repeat=5):
    fn(*args)  # warm-up / compile
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    rng = np.random.default_rng(1)
    basis48 = rng.integers(0, 1 << 48, size=(20, 1), dtype=np.uint64)
    wide = rng.integers(0, 2**63, size=(120, 2), dtype=np.uint64)
    return [
        ("weight_histogram k=20 n=48", "weight_histogram", (basis48, 48)),
        ("span k=18", "span", (basis48[:18],)),
        ("rref 120x128", "rref", (wide, 128)),
        ("popcount_rows 2^18", "popcount_rows", (rng.integers(0, 2**63, size=(1 << 18, 1), dtype=np.uint64),)),
        ("bounded_vectors E8 shell", "bounded_vectors", (np.array([-4, -2, 0, 2, 4]), 8, 16, 4, 0)),
    ]


def main():
    nb = _kernels.numba_kernels
    print(f"{'kernel':32s} {'numba [ms]':>12s} {'numpy [ms]':>12s} {'ratio':>8s}")
    for label, name, args in cases():
        t_np = _time(getattr(_kernels.numpy_kernels, name), *args)
        if nb is None:
            print(f"{label:32s} {'-':>12s} {t_np * 1e3:12.2f} {'-':>8s}")
            continue
        t_nb = _time(getattr(nb, name), *args)
        print(f"{label:32s} {t_nb * 1e3:12.2f} {t_np * 1e3:12.2f} {t_np / t_nb:8.1f}")


if __name__ == "__main__":
    main()
