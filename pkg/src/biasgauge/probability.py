"""Prior, joint and conditional probability tables over the event partition.

Tables are indexed ``[level, target]``: rows follow the protected levels,
columns the target levels 0 and 1. When built from data every entry is an
integer count divided once by an integer total, so each value matches a
brute-force row scan exactly.

Conditionals whose conditioning event has zero probability are masked
(``numpy.ma``) and reported as ``UNDEFINED``; they are never NaN or 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _accel
from .errors import NegativeProbability, RowNotNormalized
from .ingest import DEFAULT_LOW_PRIOR_THRESHOLD, DEFAULT_SKEW_THRESHOLD, TARGET_LEVELS, Dataset

ROW_TOLERANCE = 1e-9


class _Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNDEFINED"

    def __str__(self) -> str:
        return "undefined"

    def __bool__(self) -> bool:
        return False


UNDEFINED = _Undefined()


@dataclass(frozen=True, eq=False)
class ProbabilityTables:
    protected_levels: tuple[str, ...]
    prior_target: np.ndarray
    prior_protected: np.ndarray
    joint: np.ndarray
    cond_target_given_protected: np.ma.MaskedArray
    cond_protected_given_target: np.ma.MaskedArray
    support: np.ndarray | None = None
    n: int | None = None
    warnings: tuple[str, ...] = ()
    # joints from the caller's priors before normalization, kept when they differ
    stated_joint: np.ndarray | None = None
    target_levels: tuple[int, int] = TARGET_LEVELS

    def level_index(self, level: str) -> int:
        try:
            return self.protected_levels.index(level)
        except ValueError:
            raise KeyError(level) from None

    def p_target(self, y: int) -> float:
        return float(self.prior_target[y])

    def p_protected(self, level: str) -> float:
        return float(self.prior_protected[self.level_index(level)])

    def p_joint(self, level: str, y: int) -> float:
        return float(self.joint[self.level_index(level), y])

    def p_target_given(self, y: int, level: str):
        return _cell(self.cond_target_given_protected, self.level_index(level), y)

    def p_protected_given(self, level: str, y: int):
        return _cell(self.cond_protected_given_target, self.level_index(level), y)


def _cell(arr: np.ma.MaskedArray, i: int, j: int):
    if np.ma.getmaskarray(arr)[i, j]:
        return UNDEFINED
    return float(arr.data[i, j])


def _safe_divide(num: np.ndarray, den: np.ndarray) -> np.ma.MaskedArray:
    """num / den with cells masked where den == 0."""
    den = np.broadcast_to(den, num.shape)
    mask = den == 0
    out = np.zeros(num.shape, dtype=np.float64)
    np.divide(num, den, out=out, where=~mask)
    return np.ma.MaskedArray(out, mask=mask.copy())


def support_counts(dataset: Dataset) -> np.ndarray:
    return _accel.crosstab(dataset.protected_idx, dataset.target_idx, len(dataset.protected_levels))


def priors(dataset: Dataset) -> tuple[np.ndarray, np.ndarray]:
    """(P(Y=y) for y in 0,1; P(A=a) per protected level)."""
    counts = support_counts(dataset)
    n = dataset.n_rows
    return counts.sum(axis=0) / n, counts.sum(axis=1) / n


def joints(dataset: Dataset) -> np.ndarray:
    return support_counts(dataset) / dataset.n_rows


def posteriors(dataset: Dataset) -> tuple[np.ma.MaskedArray, np.ma.MaskedArray]:
    """(P(Y=y | A=a), P(A=a | Y=y)), both indexed [level, target]."""
    counts = support_counts(dataset)
    return (
        _safe_divide(counts, counts.sum(axis=1, keepdims=True)),
        _safe_divide(counts, counts.sum(axis=0, keepdims=True)),
    )


def from_counts(protected_levels, counts) -> ProbabilityTables:
    counts = np.asarray(counts, dtype=np.int64)
    n = int(counts.sum())
    if n < 1:
        raise ValueError("no rows to count")
    row = counts.sum(axis=1, keepdims=True)
    col = counts.sum(axis=0, keepdims=True)
    return ProbabilityTables(
        protected_levels=tuple(protected_levels),
        prior_target=col[0] / n,
        prior_protected=row[:, 0] / n,
        joint=counts / n,
        cond_target_given_protected=_safe_divide(counts, row),
        cond_protected_given_target=_safe_divide(counts, col),
        support=counts,
        n=n,
    )


def tables(dataset: Dataset) -> ProbabilityTables:
    return from_counts(dataset.protected_levels, support_counts(dataset))


def bayes_posteriors(prior_protected, cond_target_given_protected) -> tuple[np.ndarray, np.ma.MaskedArray]:
    """Invert P(Y | A) into P(A | Y) by Bayes' theorem.

    The denominator is the total-probability sum over the protected
    partition, P(Y=y) = sum_a P(Y=y | A=a) P(A=a). Returns (P(Y=y), P(A=a | Y=y)).
    """
    prior = np.asarray(prior_protected, dtype=np.float64)
    cond = np.ma.filled(np.ma.asarray(cond_target_given_protected, dtype=np.float64), 0.0)
    numer = prior[:, None] * cond
    p_target = numer.sum(axis=0)
    return p_target, _safe_divide(numer, p_target[None, :])


def from_specified_priors(
    prior_protected,
    cond_target_given_protected,
    protected_levels=None,
) -> ProbabilityTables:
    """Build tables from stated probabilities instead of counts.

    ``cond_target_given_protected`` has one row per level holding
    (P(Y=0 | A=a), P(Y=1 | A=a)). Priors that do not sum to 1 are normalized
    and a warning is attached; the joints implied by the priors as stated are
    kept in ``stated_joint``.
    """
    prior = np.asarray(prior_protected, dtype=np.float64)
    cond = np.asarray(cond_target_given_protected, dtype=np.float64)
    if prior.ndim != 1 or cond.shape != (prior.shape[0], 2):
        raise ValueError("expected r priors and an r x 2 conditional matrix")
    if protected_levels is None:
        protected_levels = tuple(f"level_{i}" for i in range(prior.shape[0]))
    protected_levels = tuple(protected_levels)
    if len(protected_levels) != prior.shape[0]:
        raise ValueError("one level name per prior is required")
    if (prior < 0).any() or (cond < 0).any():
        raise NegativeProbability("probabilities must be non-negative")
    row_sums = cond.sum(axis=1)
    bad = np.flatnonzero(np.abs(row_sums - 1.0) > ROW_TOLERANCE)
    if bad.size:
        detail = ", ".join(f"{protected_levels[i]}={row_sums[i]!r}" for i in bad)
        raise RowNotNormalized(f"conditional rows must sum to 1: {detail}")
    total = prior.sum()
    if total <= 0:
        raise NegativeProbability("priors sum to zero")

    warnings: tuple[str, ...] = ()
    stated_joint = None
    if abs(total - 1.0) > ROW_TOLERANCE:
        warnings = (f"protected priors sum to {total:.6g}, not 1; normalized before use",)
        stated_joint = prior[:, None] * cond
        prior = prior / total

    joint = prior[:, None] * cond
    p_target, cond_a_given_y = bayes_posteriors(prior, cond)
    return ProbabilityTables(
        protected_levels=protected_levels,
        prior_target=p_target,
        prior_protected=prior,
        joint=joint,
        cond_target_given_protected=_safe_divide(cond, np.ones((prior.shape[0], 1))),
        cond_protected_given_target=cond_a_given_y,
        warnings=warnings,
        stated_joint=stated_joint,
    )


ZERO_SUPPORT = "zero-support"
LOW_PRIOR = "low-prior"
HIGH_SKEW = "high-skew"
SEVERITY = {ZERO_SUPPORT: 0, LOW_PRIOR: 1, HIGH_SKEW: 2}


@dataclass(frozen=True, order=True)
class RiskFlag:
    severity: int
    level: str
    target: int
    kind: str = field(compare=False)
    value: float = field(compare=False)
    message: str = field(compare=False)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "severity": self.severity,
            "level": self.level,
            "target": None if self.target < 0 else self.target,
            "value": self.value,
            "message": self.message,
        }


def _flag(kind: str, level: str, target: int | None, value: float, message: str) -> RiskFlag:
    return RiskFlag(SEVERITY[kind], level, -1 if target is None else target, kind, value, message)


def zero_support_flags(
    tables: ProbabilityTables, low_prior_threshold: float = DEFAULT_LOW_PRIOR_THRESHOLD
) -> list[RiskFlag]:
    """Flag empty (level, target) cells and rare protected levels."""
    if tables.support is not None:
        empty = tables.support == 0
    else:
        empty = tables.joint == 0
    flags = []
    for i, level in enumerate(tables.protected_levels):
        for y in tables.target_levels:
            if empty[i, y]:
                if empty[i, 1 - y]:
                    consequence = f"P(Y | {level}) is undefined"
                else:
                    consequence = f"P(Y={1 - y} | {level}) is forced to 1"
                flags.append(
                    _flag(
                        ZERO_SUPPORT,
                        level,
                        y,
                        0.0,
                        f"no target={y} examples for level {level!r}; {consequence}",
                    )
                )
        p = float(tables.prior_protected[i])
        if p < low_prior_threshold:
            flags.append(
                _flag(
                    LOW_PRIOR,
                    level,
                    None,
                    p,
                    f"level {level!r} has prior {p:.3f} below {low_prior_threshold:g}",
                )
            )
    return sorted(flags)


def high_skew_flags(
    tables: ProbabilityTables, threshold: float = DEFAULT_SKEW_THRESHOLD
) -> list[RiskFlag]:
    """Flag levels whose P(Y=1 | A=a) departs from P(Y=1) by more than threshold."""
    base = float(tables.prior_target[1])
    flags = []
    for i, level in enumerate(tables.protected_levels):
        cond = _cell(tables.cond_target_given_protected, i, 1)
        if cond is UNDEFINED:
            continue
        gap = cond - base
        if abs(gap) > threshold:
            flags.append(
                _flag(
                    HIGH_SKEW,
                    level,
                    1,
                    gap,
                    f"P(Y=1 | {level}) = {cond:.3f} vs P(Y=1) = {base:.3f}",
                )
            )
    return sorted(flags)
