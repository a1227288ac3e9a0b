"""Bayesian discriminatory-risk annotation for categorical tabular data."""

__version__ = "0.1.0"

from .annotation import AnnotationDocument, annotate, annotate_tables, parse, serialize
from .dependence import (
    ContingencyTable,
    DependenceSummary,
    build_contingency,
    chi_square,
    classify_magnitude,
    contingency_coefficient,
    effect_size_w,
)
from .ingest import AuditConfig, Dataset, load_config, load_dataset, validate_binary_target
from .probability import (
    UNDEFINED,
    ProbabilityTables,
    from_specified_priors,
    joints,
    posteriors,
    priors,
    tables,
    zero_support_flags,
)
from .render import BadgeSet, render_badges

__all__ = [
    "UNDEFINED",
    "AnnotationDocument",
    "AuditConfig",
    "BadgeSet",
    "ContingencyTable",
    "Dataset",
    "DependenceSummary",
    "ProbabilityTables",
    "annotate",
    "annotate_tables",
    "build_contingency",
    "chi_square",
    "classify_magnitude",
    "contingency_coefficient",
    "effect_size_w",
    "from_specified_priors",
    "joints",
    "load_config",
    "load_dataset",
    "parse",
    "posteriors",
    "priors",
    "render_badges",
    "serialize",
    "tables",
    "validate_binary_target",
    "zero_support_flags",
]
