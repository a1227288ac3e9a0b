import json

import pytest

from biasgauge.annotation import SECTIONS, UNDEFINED_TOKEN, annotate, annotate_tables, parse, serialize
from biasgauge.dependence import VERY_SMALL
from biasgauge.ingest import AuditConfig, dataset_from_labels
from biasgauge.probability import from_counts

from conftest import FIXED_TIME

CONFIG = AuditConfig("group", "outcome", "1")


def independent_dataset():
    protected = ["a"] * 40 + ["b"] * 60
    target = ([0] * 1 + [1] * 1) * 50
    return dataset_from_labels(protected, target, name="synthetic")


def test_independent_document_has_no_flags():
    doc = annotate(independent_dataset(), CONFIG, created_at=FIXED_TIME)
    assert doc.dependence["magnitude"] == VERY_SMALL
    assert doc.dependence["chi_square"] == 0.0
    assert doc.flags == []


def test_sections_complete():
    ds = dataset_from_labels(list("abcabcabd"), [0, 1, 1, 0, 0, 1, 1, 1, 0])
    doc = annotate(ds, CONFIG, created_at=FIXED_TIME)
    assert set(doc.to_dict()) == {"schema", *SECTIONS}
    r = len(ds.protected_levels)
    assert len(doc.diverseness["protected"]) == r
    assert len(doc.diverseness["target"]) == 2
    assert len(doc.inclusiveness["joint"]) == 2 * r
    for key in ("target_given_protected", "protected_given_target"):
        cells = doc.training_likelihood[key]
        assert {(c["level"], c["target"]) for c in cells} == {(a, y) for a in ds.protected_levels for y in (0, 1)}


def test_round_trip():
    ds = dataset_from_labels(list("aabbbc"), [0, 1, 1, 1, 0, 1])
    doc = annotate(ds, CONFIG, created_at=FIXED_TIME)
    text = serialize(doc)
    assert parse(text) == doc
    assert serialize(parse(text)) == text


def test_rerun_is_byte_identical_except_created_at():
    ds = dataset_from_labels(list("aabbbc"), [0, 1, 1, 1, 0, 1])
    a = json.loads(serialize(annotate(ds, CONFIG)))
    b = json.loads(serialize(annotate(ds, CONFIG)))
    a["meta"].pop("created_at")
    b["meta"].pop("created_at")
    assert json.dumps(a) == json.dumps(b)


def test_undefined_cells_render_as_token():
    tbl = from_counts(("a", "b"), [[0, 3], [0, 2]])
    doc = annotate_tables(tbl, "no-zeros", created_at=FIXED_TIME)
    cells = [c for c in doc.training_likelihood["protected_given_target"] if c["target"] == 0]
    assert all(c["p"] == UNDEFINED_TOKEN and c["display"] == UNDEFINED_TOKEN for c in cells)
    assert '"undefined"' in serialize(doc)
    assert doc.dependence["computable"] is False
    assert "zero marginal" in doc.dependence["reason"]
    # probability sections are still emitted
    assert doc.diverseness["target"][1]["p"] == 1.0
    assert parse(serialize(doc)) == doc


def test_display_is_three_decimals():
    ds = dataset_from_labels(["a", "b", "b"], [1, 0, 1])
    doc = annotate(ds, CONFIG, created_at=FIXED_TIME)
    p = doc.diverseness["protected"][1]
    assert p["p"] == pytest.approx(2 / 3)
    assert p["display"] == "0.667"


def test_flags_sorted_by_severity_then_level():
    protected = ["zz"] * 2 + ["aa"] * 1 + ["mm"] * 297
    target = [1, 1, 0] + [0, 1] * 148 + [1]
    doc = annotate(dataset_from_labels(protected, target), CONFIG, created_at=FIXED_TIME)
    keys = [(f["severity"], f["level"]) for f in doc.flags]
    assert keys == sorted(keys)
    assert [f["kind"] for f in doc.flags][:2] == ["zero-support", "zero-support"]


def test_zero_support_flag_iff_count_zero():
    protected = ["p"] * 5 + ["q"] * 5 + ["r"] * 5
    target = [1] * 5 + [0] * 5 + [0, 1, 0, 1, 0]
    doc = annotate(dataset_from_labels(protected, target), CONFIG, created_at=FIXED_TIME)
    flagged = {(f["level"], f["target"]) for f in doc.flags if f["kind"] == "zero-support"}
    empty = {(c["level"], c["target"]) for c in doc.inclusiveness["joint"] if c["count"] == 0}
    assert flagged == empty == {("p", 0), ("q", 1)}


def test_lookup():
    doc = annotate(dataset_from_labels(["a", "b"], [0, 1]), CONFIG, created_at=FIXED_TIME)
    assert doc.lookup("training_likelihood", "target_given_protected", "b", 1) == 1.0
    with pytest.raises(KeyError):
        doc.lookup("diverseness", "protected", "zzz")


def test_parse_rejects_foreign_schema():
    with pytest.raises(ValueError):
        parse('{"schema": "other"}')
