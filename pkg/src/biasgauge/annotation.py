"""The annotation document: dependence, diverseness, inclusiveness and
training likelihood for one (protected attribute, target) pair, plus flags.

The serialized form is JSON with a fixed key order. Each probability is
stored at full precision under ``p`` with a 3-decimal ``display`` string
next to it; undefined conditionals use the token ``"undefined"`` in both.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import dependence as dep
from .errors import DegenerateMarginal
from .ingest import DEFAULT_LOW_PRIOR_THRESHOLD, DEFAULT_SKEW_THRESHOLD, AuditConfig, Dataset
from .probability import (
    ProbabilityTables,
    high_skew_flags,
    tables as count_tables,
    zero_support_flags,
)

SCHEMA = "biasgauge.annotation/1"
UNDEFINED_TOKEN = "undefined"
SECTIONS = ("meta", "dependence", "diverseness", "inclusiveness", "training_likelihood", "flags")


def fmt_prob(p) -> str:
    return UNDEFINED_TOKEN if p == UNDEFINED_TOKEN else f"{p:.3f}"


def fmt_stat(x) -> str:
    return UNDEFINED_TOKEN if x == UNDEFINED_TOKEN else f"{x:.4f}"


@dataclass(frozen=True)
class AnnotationDocument:
    meta: dict
    dependence: dict
    diverseness: dict
    inclusiveness: dict
    training_likelihood: dict
    flags: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, **{name: getattr(self, name) for name in SECTIONS}}

    @property
    def name(self) -> str:
        return self.meta["name"]

    def lookup(self, section: str, key: str, level, target=None):
        """Return the ``p`` value of one cell, e.g. ``lookup("training_likelihood",
        "protected_given_target", "Black", 1)``."""
        rows = getattr(self, section)[key]
        for row in rows:
            if row["level"] == level and (target is None or row.get("target") == target):
                return row["p"]
        raise KeyError((section, key, level, target))


def _cells(levels, matrix, counts=None) -> list[dict]:
    out = []
    mask = np.ma.getmaskarray(matrix)
    for y in (0, 1):
        for i, level in enumerate(levels):
            if mask[i, y]:
                p = UNDEFINED_TOKEN
            else:
                p = float(np.ma.getdata(matrix)[i, y])
            cell = {"level": level, "target": y}
            if counts is not None:
                cell["count"] = int(counts[i, y])
            cell["p"] = p
            cell["display"] = fmt_prob(p)
            out.append(cell)
    return out


def _dependence_section(joint: np.ndarray, counts: np.ndarray | None) -> dict:
    try:
        if counts is not None:
            summary = dep.summarize(dep.contingency_from_counts(counts))
            chi2 = summary.chi_square
            c, w, label = summary.contingency_coefficient, summary.effect_size_w, summary.magnitude
        else:
            # proportions only: w is scale-free, chi-square needs a row count
            w = dep.effect_size_w_from_proportions(joint)
            chi2 = UNDEFINED_TOKEN
            c = dep.coefficient_from_w(w)
            label = dep.classify_magnitude(w)
    except DegenerateMarginal as exc:
        return {"computable": False, "reason": str(exc)}
    return {
        "computable": True,
        "chi_square": chi2,
        "contingency_coefficient": c,
        "effect_size_w": w,
        "magnitude": label,
        "display": {
            "chi_square": fmt_stat(chi2),
            "contingency_coefficient": fmt_stat(c),
            "effect_size_w": fmt_stat(w),
        },
    }


def _now() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat().replace("+00:00", "Z")


def annotate_tables(
    tbl: ProbabilityTables,
    name: str,
    *,
    config: AuditConfig | None = None,
    source_digest: str = "",
    dropped_rows: int = 0,
    target_semantics: str | None = None,
    low_prior_threshold: float | None = None,
    skew_threshold: float | None = None,
    created_at: str | None = None,
) -> AnnotationDocument:
    """Assemble the document from already-computed probability tables."""
    from . import __version__

    if config is not None:
        low_prior_threshold = config.low_prior_threshold if low_prior_threshold is None else low_prior_threshold
        skew_threshold = config.skew_threshold if skew_threshold is None else skew_threshold
        target_semantics = target_semantics or config.target_semantics
    if low_prior_threshold is None:
        low_prior_threshold = DEFAULT_LOW_PRIOR_THRESHOLD
    if skew_threshold is None:
        skew_threshold = DEFAULT_SKEW_THRESHOLD

    levels = list(tbl.protected_levels)
    counts = tbl.support
    flags = sorted(
        zero_support_flags(tbl, low_prior_threshold) + high_skew_flags(tbl, skew_threshold)
    )

    meta = {
        "name": name,
        "source": "counts" if counts is not None else "specified",
        "n_rows": tbl.n,
        "dropped_rows": dropped_rows,
        "source_digest": source_digest,
        "config": config.to_dict() if config is not None else None,
        "target_semantics": target_semantics,
        "thresholds": {"low_prior": low_prior_threshold, "skew": skew_threshold},
        "warnings": list(tbl.warnings),
        "tool_version": __version__,
        "created_at": created_at or _now(),
    }
    col_counts = counts.sum(axis=0) if counts is not None else None
    row_counts = counts.sum(axis=1) if counts is not None else None
    diverseness = {
        "target": [
            {
                "level": y,
                **({"count": int(col_counts[y])} if col_counts is not None else {}),
                "p": float(tbl.prior_target[y]),
                "display": fmt_prob(float(tbl.prior_target[y])),
            }
            for y in (0, 1)
        ],
        "protected": [
            {
                "level": level,
                **({"count": int(row_counts[i])} if row_counts is not None else {}),
                "p": float(tbl.prior_protected[i]),
                "display": fmt_prob(float(tbl.prior_protected[i])),
            }
            for i, level in enumerate(levels)
        ],
    }
    inclusiveness = {"joint": _cells(levels, tbl.joint, counts)}
    if tbl.stated_joint is not None:
        inclusiveness["stated_joint"] = _cells(levels, tbl.stated_joint)
    likelihood = {
        "target_given_protected": _cells(levels, tbl.cond_target_given_protected),
        "protected_given_target": _cells(levels, tbl.cond_protected_given_target),
    }
    return AnnotationDocument(
        meta=meta,
        dependence=_dependence_section(tbl.joint, counts),
        diverseness=diverseness,
        inclusiveness=inclusiveness,
        training_likelihood=likelihood,
        flags=[f.to_dict() for f in flags],
    )


def annotate(dataset: Dataset, config: AuditConfig, *, created_at: str | None = None) -> AnnotationDocument:
    return annotate_tables(
        count_tables(dataset),
        dataset.name,
        config=config,
        source_digest=dataset.source_digest,
        dropped_rows=dataset.dropped_rows,
        created_at=created_at,
    )


def serialize(document: AnnotationDocument) -> str:
    return json.dumps(document.to_dict(), indent=2, ensure_ascii=False) + "\n"


def parse(text: str) -> AnnotationDocument:
    data = json.loads(text)
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {data.get('schema')!r}")
    missing = [s for s in SECTIONS if s not in data]
    if missing:
        raise ValueError(f"document is missing sections: {', '.join(missing)}")
    return AnnotationDocument(**{s: data[s] for s in SECTIONS})
