from __future__ import annotations

import os
from pathlib import Path

import pytest

from biasgauge.fixtures import FIXTURES_ENV, fixture_path, fixture_status, get_dataset
from biasgauge.ingest import load_dataset

REPO = Path(__file__).resolve().parent.parent
FIXED_TIME = "2000-01-01T00:00:00Z"


def fixtures_root() -> Path:
    return Path(os.environ.get(FIXTURES_ENV, REPO / "fixtures"))


def load_fixture(name: str):
    """Load a case-study dataset or skip with instructions."""
    path = fixture_path(name, fixtures_root())
    if not path.is_file():
        pytest.skip(
            f"dataset fixture {name!r} not found at {path}; "
            f"run scripts/fetch_fixtures.py (or set {FIXTURES_ENV})"
        )
    status = fixture_status(name, fixtures_root())
    if status == "digest-mismatch":
        pytest.skip(f"fixture {path} does not match the recorded sha256")
    fx = get_dataset(name)
    return load_dataset(path, fx.config), fx


@pytest.fixture
def write_csv(tmp_path):
    def _write(text: str, name: str = "data.csv") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
