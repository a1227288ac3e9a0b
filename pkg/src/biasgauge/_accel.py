"""Counting kernels with an optional numba path.

The numba kernels are used when numba imports and ``BIASGAUGE_NUMBA`` is not
set to a false-ish value ("0", "false", "off", "no"). Both paths return
identical integer counts; the chi-square reduction may differ from the numpy
path in the last ulp because the summation order differs.
"""

from __future__ import annotations

import os

import numpy as np

_FALSY = {"0", "false", "off", "no"}


def _numba_requested() -> bool:
    return os.environ.get("BIASGAUGE_NUMBA", "1").strip().lower() not in _FALSY


try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and _numba_requested()
BACKEND = "numba" if USE_NUMBA else "numpy"


def crosstab_numpy(protected_idx: np.ndarray, target_idx: np.ndarray, n_levels: int) -> np.ndarray:
    flat = protected_idx.astype(np.int64) * 2 + target_idx.astype(np.int64)
    return np.bincount(flat, minlength=2 * n_levels).reshape(n_levels, 2).astype(np.int64)


def chi_square_numpy(observed: np.ndarray, expected: np.ndarray) -> float:
    diff = observed - expected
    return float(np.sum(diff * diff / expected))


if numba is not None:

    @numba.njit(cache=False)
    def crosstab_numba(protected_idx, target_idx, n_levels):
        out = np.zeros((n_levels, 2), dtype=np.int64)
        for k in range(protected_idx.shape[0]):
            out[protected_idx[k], target_idx[k]] += 1
        return out

    @numba.njit(cache=False)
    def chi_square_numba(observed, expected):
        total = 0.0
        for i in range(observed.shape[0]):
            for j in range(observed.shape[1]):
                d = observed[i, j] - expected[i, j]
                total += d * d / expected[i, j]
        return total

else:  # pragma: no cover
    crosstab_numba = None
    chi_square_numba = None


def crosstab(protected_idx: np.ndarray, target_idx: np.ndarray, n_levels: int) -> np.ndarray:
    """Count rows per (protected level, target level) pair."""
    if USE_NUMBA:
        return crosstab_numba(
            np.ascontiguousarray(protected_idx, dtype=np.int64),
            np.ascontiguousarray(target_idx, dtype=np.int64),
            n_levels,
        )
    return crosstab_numpy(protected_idx, target_idx, n_levels)


def chi_square_sum(observed: np.ndarray, expected: np.ndarray) -> float:
    """Sum of (O - E)^2 / E over all cells."""
    if USE_NUMBA:
        return float(
            chi_square_numba(
                np.ascontiguousarray(observed, dtype=np.float64),
                np.ascontiguousarray(expected, dtype=np.float64),
            )
        )
    return chi_square_numpy(np.asarray(observed, dtype=np.float64), np.asarray(expected, dtype=np.float64))
