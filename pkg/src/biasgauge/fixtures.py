"""Case-study fixtures: the three public datasets and the worked example.

The datasets are not downloaded by the tool. ``scripts/fetch_fixtures.py``
builds the CSV files listed here into the directory named by
``BIASGAUGE_FIXTURES`` (default: ``./fixtures``).
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import UnknownFixture
from .ingest import AuditConfig

FIXTURES_ENV = "BIASGAUGE_FIXTURES"


@dataclass(frozen=True)
class DatasetFixture:
    name: str
    filename: str
    config: AuditConfig
    n_rows: int
    sha256: str | None
    # display names used in published tables -> labels present in the file
    level_aliases: dict[str, str] = field(default_factory=dict)


DATASETS = {
    "compas": DatasetFixture(
        name="compas",
        filename="compas-scores-two-years-filtered.csv",
        config=AuditConfig(
            protected_column="race",
            target_column="two_year_recid",
            positive_label="1",
            negative_label="0",
            target_semantics="1 = reoffended within two years, 0 = did not",
        ),
        n_rows=6172,
        sha256="777335201b992a8e8bc416794ff7d58c3a32284d6eeb2c291fc7296ae59f7ce6",
        level_aliases={
            "Black": "African-American",
            "Caucasian": "Caucasian",
            "Asian": "Asian",
            "Hispanic": "Hispanic",
            "Native American": "Native American",
            "Other": "Other",
        },
    ),
    "drug": DatasetFixture(
        name="drug",
        filename="drug-consumption-cannabis.csv",
        config=AuditConfig(
            protected_column="ethnicity",
            target_column="cannabis",
            positive_label="1",
            negative_label="0",
            target_semantics="1 = cannabis user (used in the last decade or more recently), 0 = non-user",
        ),
        n_rows=1885,
        sha256=None,
        level_aliases={
            "Asian": "Asian",
            "Black": "Black",
            "Black/Asian": "Mixed-Black/Asian",
            "Caucasian": "White",
            "White/Asian": "Mixed-White/Asian",
            "White/Black": "Mixed-White/Black",
            "Other": "Other",
        },
    ),
    "adult": DatasetFixture(
        name="adult",
        filename="adult.csv",
        config=AuditConfig(
            protected_column="race",
            target_column="income",
            positive_label="<=50K",
            negative_label=">50K",
            target_semantics="1 = income <=50K, 0 = income >50K",
        ),
        n_rows=48842,
        sha256="6f8f2babc5ee744afd03f6d978d8d6b3e3b0aae240d931c4976a9cce7af0d347",
        level_aliases={
            "Caucasian": "White",
            "Black": "Black",
            "AIE": "Amer-Indian-Eskimo",
            "API": "Asian-Pac-Islander",
            "Other": "Other",
        },
    ),
}


@dataclass(frozen=True)
class SpecifiedExample:
    name: str
    protected_levels: tuple[str, ...]
    prior_protected: tuple[float, ...]
    # rows: (P(Y=0 | level), P(Y=1 | level)); Y=1 is the negative outcome
    cond_target_given_protected: tuple[tuple[float, float], ...]
    target_semantics: str


EXAMPLES = {
    "motivating": SpecifiedExample(
        name="motivating",
        protected_levels=("white", "black", "Asian"),
        prior_protected=(0.6, 0.35, 0.15),
        cond_target_given_protected=((0.7, 0.3), (0.2, 0.8), (0.6, 0.4)),
        target_semantics="0 = positive outcome, 1 = negative outcome",
    ),
}


def get_example(name: str) -> SpecifiedExample:
    try:
        return EXAMPLES[name]
    except KeyError:
        raise UnknownFixture(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None


def get_dataset(name: str) -> DatasetFixture:
    try:
        return DATASETS[name]
    except KeyError:
        raise UnknownFixture(f"unknown dataset fixture {name!r}; choose from {sorted(DATASETS)}") from None


def fixtures_dir() -> Path:
    return Path(os.environ.get(FIXTURES_ENV, "fixtures"))


def fixture_path(name: str, directory: Path | None = None) -> Path:
    return (directory or fixtures_dir()) / get_dataset(name).filename


def file_sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def fixture_status(name: str, directory: Path | None = None) -> str:
    """One of "missing", "ok", "unverified" (no digest on record) or "digest-mismatch"."""
    path = fixture_path(name, directory)
    if not path.is_file():
        return "missing"
    expected = get_dataset(name).sha256
    if expected is None:
        return "unverified"
    return "ok" if file_sha256(path) == expected else "digest-mismatch"
