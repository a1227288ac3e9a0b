"""Loading delimited text into a categorical (protected, target) dataset."""

from __future__ import annotations

import configparser
import csv
import hashlib
import io
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .errors import (
    ColumnNotFound,
    ConfigError,
    DegenerateTarget,
    EmptyAfterFiltering,
    FileNotReadable,
    TargetNotBinary,
)

MISSING_POLICIES = ("drop-row", "as-category")
MISSING_LEVEL = "(missing)"
TARGET_LEVELS = (0, 1)

DEFAULT_LOW_PRIOR_THRESHOLD = 0.01
DEFAULT_SKEW_THRESHOLD = 0.2


@dataclass(frozen=True)
class AuditConfig:
    """Which columns to audit and how to read them.

    ``positive_label`` is the raw cell value mapped to target level 1. When
    ``negative_label`` is given, every other non-empty target value is an
    error; otherwise every other value maps to 0.
    """

    protected_column: str
    target_column: str
    positive_label: str
    negative_label: str | None = None
    missing_policy: str = "drop-row"
    delimiter: str = ","
    has_header: bool = True
    target_semantics: str | None = None
    low_prior_threshold: float = DEFAULT_LOW_PRIOR_THRESHOLD
    skew_threshold: float = DEFAULT_SKEW_THRESHOLD

    def __post_init__(self) -> None:
        if self.protected_column == self.target_column:
            raise ConfigError("protected and target columns must differ")
        if self.negative_label is not None and self.negative_label == self.positive_label:
            raise ConfigError("positive and negative labels must differ")
        if self.missing_policy not in MISSING_POLICIES:
            raise ConfigError(
                f"missing_policy must be one of {MISSING_POLICIES}, got {self.missing_policy!r}"
            )
        if len(self.delimiter) != 1:
            raise ConfigError(f"delimiter must be a single character, got {self.delimiter!r}")
        if not 0.0 <= self.low_prior_threshold <= 1.0:
            raise ConfigError("low_prior_threshold must lie in [0, 1]")
        if not 0.0 <= self.skew_threshold <= 1.0:
            raise ConfigError("skew_threshold must lie in [0, 1]")

    def to_dict(self) -> dict:
        return asdict(self)


_CONFIG_KEYS = {
    "protected": "protected_column",
    "target": "target_column",
    "positive": "positive_label",
    "negative": "negative_label",
    "missing_policy": "missing_policy",
    "delimiter": "delimiter",
    "header": "has_header",
    "target_semantics": "target_semantics",
    "low_prior_threshold": "low_prior_threshold",
    "skew_threshold": "skew_threshold",
}


def _parse_delimiter(raw: str) -> str:
    return {"tab": "\t", "\\t": "\t", "comma": ",", "semicolon": ";", "pipe": "|"}.get(raw, raw)


def load_config(path: str | Path) -> AuditConfig:
    """Read an ``[audit]`` section from an INI-style key-value file."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise FileNotReadable(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    if not parser.has_section("audit"):
        raise ConfigError(f"config {path} has no [audit] section")
    section = parser["audit"]
    unknown = sorted(set(section) - set(_CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    kwargs: dict = {}
    for key, attr in _CONFIG_KEYS.items():
        if key not in section:
            continue
        if attr == "has_header":
            try:
                kwargs[attr] = section.getboolean(key)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        elif attr.endswith("threshold"):
            try:
                kwargs[attr] = section.getfloat(key)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        elif attr == "delimiter":
            kwargs[attr] = _parse_delimiter(section[key])
        else:
            kwargs[attr] = section[key]
    missing = [k for k in ("protected", "target", "positive") if _CONFIG_KEYS[k] not in kwargs]
    if missing:
        raise ConfigError(f"config {path} is missing required keys: {', '.join(missing)}")
    return AuditConfig(**kwargs)


@dataclass(frozen=True, eq=False)
class Dataset:
    """Immutable (protected level, target level) pairs, one per row.

    ``protected_levels`` is in lexicographic order and the integer codes in
    ``protected_idx`` index into it; ``target_idx`` holds 0/1 directly.
    """

    name: str
    protected_levels: tuple[str, ...]
    protected_idx: np.ndarray
    target_idx: np.ndarray
    source_digest: str
    target_levels: tuple[int, int] = TARGET_LEVELS
    dropped_rows: int = 0

    def __post_init__(self) -> None:
        for arr in (self.protected_idx, self.target_idx):
            arr.setflags(write=False)

    @property
    def n_rows(self) -> int:
        return int(self.protected_idx.shape[0])

    @property
    def cells(self) -> np.ndarray:
        return np.column_stack([self.protected_idx, self.target_idx])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.name == other.name
            and self.protected_levels == other.protected_levels
            and self.source_digest == other.source_digest
            and self.dropped_rows == other.dropped_rows
            and np.array_equal(self.protected_idx, other.protected_idx)
            and np.array_equal(self.target_idx, other.target_idx)
        )

    __hash__ = None


def dataset_from_labels(
    protected: list[str],
    target: list[int],
    name: str = "memory",
    source_digest: str = "",
    dropped_rows: int = 0,
) -> Dataset:
    """Build a Dataset from parallel label lists (target already 0/1)."""
    if len(protected) != len(target):
        raise ValueError("protected and target must have the same length")
    if not protected:
        raise EmptyAfterFiltering("no rows")
    levels = tuple(sorted(set(protected)))
    code = {lvl: i for i, lvl in enumerate(levels)}
    p_idx = np.fromiter((code[v] for v in protected), dtype=np.int64, count=len(protected))
    t_idx = np.asarray(target, dtype=np.int64)
    if t_idx.size and not np.isin(t_idx, TARGET_LEVELS).all():
        raise TargetNotBinary("target values must be 0 or 1")
    if not source_digest:
        payload = "\n".join(f"{p}\x1f{t}" for p, t in zip(protected, t_idx.tolist()))
        source_digest = hashlib.sha256(payload.encode("utf-8")).hexdigest()
    return Dataset(name, levels, p_idx, t_idx, source_digest, dropped_rows=dropped_rows)


def _resolve(header: list[str], column: str) -> int:
    try:
        return header.index(column)
    except ValueError:
        raise ColumnNotFound(column, header) from None


def load_dataset(path: str | Path, config: AuditConfig) -> Dataset:
    """Read ``path`` and reduce it to the audited column pair.

    Only empty cells count as missing. Lookalike strings such as "NA" are
    ordinary categories.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise FileNotReadable(f"cannot read {path}: {exc}") from exc
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise FileNotReadable(f"{path} is not valid UTF-8: {exc}") from exc

    reader = csv.reader(io.StringIO(text, newline=""), delimiter=config.delimiter)
    rows = (r for r in reader if r)
    if config.has_header:
        header = next(rows, None)
        if header is None:
            raise EmptyAfterFiltering(f"{path} has no header row")
    else:
        first = next(rows, None)
        if first is None:
            raise EmptyAfterFiltering(f"{path} has no rows")
        header = [str(i) for i in range(len(first))]
        rows = _chain_first(first, rows)

    p_col = _resolve(header, config.protected_column)
    t_col = _resolve(header, config.target_column)

    protected: list[str] = []
    target: list[int] = []
    dropped = 0
    as_category = config.missing_policy == "as-category"
    line = 1 if config.has_header else 0
    for row in rows:
        line += 1
        p = row[p_col] if p_col < len(row) else ""
        t = row[t_col] if t_col < len(row) else ""
        if t == "":
            # target must be binary; an empty outcome is never a category
            dropped += 1
            continue
        if p == "":
            if not as_category:
                dropped += 1
                continue
            p = MISSING_LEVEL
        elif as_category and p == MISSING_LEVEL:
            raise ConfigError(f"value {MISSING_LEVEL!r} collides with the missing-value level")
        if t == config.positive_label:
            target.append(1)
        elif config.negative_label is None or t == config.negative_label:
            target.append(0)
        else:
            raise TargetNotBinary(
                f"record {line}: target value {t!r} is neither "
                f"{config.positive_label!r} nor {config.negative_label!r}"
            )
        protected.append(p)

    if not protected:
        raise EmptyAfterFiltering(f"{path}: no rows left after applying {config.missing_policy}")
    return dataset_from_labels(
        protected,
        target,
        name=path.stem,
        source_digest=hashlib.sha256(raw).hexdigest(),
        dropped_rows=dropped,
    )


def _chain_first(first, rest):
    yield first
    yield from rest


@dataclass(frozen=True)
class TargetValidation:
    supports: tuple[int, int]

    @property
    def ok(self) -> bool:
        return min(self.supports) > 0


def validate_binary_target(dataset: Dataset) -> TargetValidation:
    """Check both target levels are populated; return per-level row counts."""
    counts = np.bincount(dataset.target_idx, minlength=2)
    if counts.shape[0] != 2:
        raise DegenerateTarget("target has values outside {0, 1}")
    supports = (int(counts[0]), int(counts[1]))
    for level, support in zip(TARGET_LEVELS, supports):
        if support == 0:
            raise DegenerateTarget(
                f"target level {level} has no rows; conditionals on it are undefined"
            )
    return TargetValidation(supports)
