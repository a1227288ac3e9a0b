"""Association between the protected attribute and the binary target.

Pearson chi-square over the levels-by-target table, the contingency
coefficient derived from it, and Cohen's effect size index w computed from
cell proportions, binned into conventional magnitude labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _accel
from .errors import DegenerateMarginal
from .ingest import Dataset

VERY_SMALL = "VERY SMALL"
SMALL = "SMALL"
MEDIUM = "MEDIUM"
LARGE = "LARGE"

# (lower bound inclusive, label); anything below the first bound is VERY SMALL
MAGNITUDE_BINS = ((0.5, LARGE), (0.3, MEDIUM), (0.1, SMALL))


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    observed: np.ndarray
    expected: np.ndarray
    row_totals: np.ndarray
    col_totals: np.ndarray
    n: int

    @property
    def observed_prop(self) -> np.ndarray:
        return self.observed / self.n

    @property
    def expected_prop(self) -> np.ndarray:
        return self.expected / self.n

    @property
    def contingencies(self) -> np.ndarray:
        """Observed minus expected frequency, cell by cell."""
        return self.observed - self.expected


@dataclass(frozen=True)
class DependenceSummary:
    chi_square: float
    contingency_coefficient: float
    effect_size_w: float
    magnitude: str
    n: int


def contingency_from_counts(observed) -> ContingencyTable:
    """Build the table from an r x c matrix of non-negative counts."""
    obs = np.asarray(observed)
    if obs.ndim != 2:
        raise ValueError("observed counts must be a 2-D matrix")
    if (obs < 0).any():
        raise ValueError("counts must be non-negative")
    obs = obs.astype(np.float64)
    row_totals = obs.sum(axis=1)
    col_totals = obs.sum(axis=0)
    n = obs.sum()
    if n <= 0:
        raise DegenerateMarginal("table is empty")
    zero_rows = np.flatnonzero(row_totals == 0)
    zero_cols = np.flatnonzero(col_totals == 0)
    if zero_rows.size or zero_cols.size:
        raise DegenerateMarginal(
            f"zero marginal total (rows {zero_rows.tolist()}, columns {zero_cols.tolist()}); "
            "expected frequencies would divide by zero"
        )
    expected = np.outer(row_totals, col_totals) / n
    return ContingencyTable(obs, expected, row_totals, col_totals, int(round(n)))


def build_contingency(dataset: Dataset) -> ContingencyTable:
    counts = _accel.crosstab(dataset.protected_idx, dataset.target_idx, len(dataset.protected_levels))
    return contingency_from_counts(counts)


def chi_square(table: ContingencyTable) -> float:
    if (table.expected <= 0).any():
        raise DegenerateMarginal("expected frequency of zero")
    return _accel.chi_square_sum(table.observed, table.expected)


def contingency_coefficient(chi_square: float, n: int) -> float:
    if n < 1:
        raise ValueError("n must be at least 1")
    if chi_square < 0:
        raise ValueError("chi-square must be non-negative")
    return math.sqrt(chi_square / (chi_square + n))


def effect_size_w(table: ContingencyTable) -> float:
    """Cohen's w over all cells: sqrt(sum((P1 - P0)^2 / P0)).

    P1 are observed cell proportions, P0 the proportions expected under
    independence.
    """
    p0 = table.expected_prop
    if (p0 <= 0).any():
        raise DegenerateMarginal("expected proportion of zero")
    return _w(table.observed_prop, p0)


def _w(p1: np.ndarray, p0: np.ndarray) -> float:
    return math.sqrt(float(np.sum((p1 - p0) ** 2 / p0)))


def effect_size_w_from_proportions(joint) -> float:
    """w from a matrix of cell proportions summing to 1 (no counts needed)."""
    p1 = np.asarray(joint, dtype=np.float64)
    p0 = np.outer(p1.sum(axis=1), p1.sum(axis=0))
    if (p0 <= 0).any():
        raise DegenerateMarginal("expected proportion of zero")
    return _w(p1, p0)


def w_from_coefficient(c: float) -> float:
    if not 0.0 <= c < 1.0:
        raise ValueError("contingency coefficient must lie in [0, 1)")
    return math.sqrt(c * c / (1.0 - c * c))


def coefficient_from_w(w: float) -> float:
    return math.sqrt(w * w / (w * w + 1.0))


def classify_magnitude(w: float) -> str:
    if w < 0:
        raise ValueError("effect size must be non-negative")
    for bound, label in MAGNITUDE_BINS:
        if w >= bound:
            return label
    return VERY_SMALL


def summarize(table: ContingencyTable) -> DependenceSummary:
    chi2 = chi_square(table)
    w = effect_size_w(table)
    return DependenceSummary(
        chi_square=chi2,
        contingency_coefficient=contingency_coefficient(chi2, table.n),
        effect_size_w=w,
        magnitude=classify_magnitude(w),
        n=table.n,
    )


def dependence(dataset: Dataset) -> DependenceSummary:
    return summarize(build_contingency(dataset))
