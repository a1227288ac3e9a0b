"""Compare the numba and numpy counting kernels.

    python benchmarks/bench_kernels.py [--rows 1000000 --levels 12 --repeat 20]

The numba column excludes the first (compiling) call.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from biasgauge import _accel


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--rows", type=int, nargs="+", default=[10_000, 100_000, 1_000_000, 10_000_000])
    parser.add_argument("--levels", type=int, default=12)
    parser.add_argument("--repeat", type=int, default=10)
    args = parser.parse_args()
    if _accel.crosstab_numba is None:
        raise SystemExit("numba is not importable")

    rng = np.random.default_rng(0)
    print(f"{'rows':>10} {'kernel':>10} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for n in args.rows:
        p = rng.integers(0, args.levels, size=n)
        t = rng.integers(0, 2, size=n)
        _accel.crosstab_numba(p, t, args.levels)  # compile
        assert np.array_equal(_accel.crosstab_numba(p, t, args.levels), _accel.crosstab_numpy(p, t, args.levels))
        a = best_of(lambda: _accel.crosstab_numpy(p, t, args.levels), args.repeat)
        b = best_of(lambda: _accel.crosstab_numba(p, t, args.levels), args.repeat)
        print(f"{n:>10} {'crosstab':>10} {a * 1e3:>10.3f} {b * 1e3:>10.3f} {a / b:>8.2f}")

    obs = _accel.crosstab_numpy(p, t, args.levels).astype(float)
    exp = np.outer(obs.sum(1), obs.sum(0)) / obs.sum()
    _accel.chi_square_numba(obs, exp)
    a = best_of(lambda: _accel.chi_square_numpy(obs, exp), args.repeat * 100)
    b = best_of(lambda: _accel.chi_square_numba(obs, exp), args.repeat * 100)
    print(f"{obs.shape[0]:>10} {'chi2':>10} {a * 1e3:>10.4f} {b * 1e3:>10.4f} {a / b:>8.2f}")


if __name__ == "__main__":
    main()
