import numpy as np
import pytest

from biasgauge.errors import NegativeProbability, RowNotNormalized
from biasgauge.fixtures import get_example
from biasgauge.ingest import dataset_from_labels
from biasgauge.probability import (
    HIGH_SKEW,
    LOW_PRIOR,
    UNDEFINED,
    ZERO_SUPPORT,
    bayes_posteriors,
    from_counts,
    from_specified_priors,
    high_skew_flags,
    joints,
    posteriors,
    priors,
    tables,
    zero_support_flags,
)

from oracles import count_oracle


def motivating():
    ex = get_example("motivating")
    return from_specified_priors(ex.prior_protected, ex.cond_target_given_protected, ex.protected_levels)


def test_priors_toy_count():
    # 10 rows, 4 with target 0
    ds = dataset_from_labels(list("aabbbccccc"), [0, 1, 0, 1, 1, 0, 1, 0, 1, 1])
    p_target, p_protected = priors(ds)
    assert p_target[0] == 0.4
    assert p_protected.tolist() == [0.2, 0.3, 0.5]


def test_single_level_prior_is_one():
    ds = dataset_from_labels(["x"] * 5, [0, 1, 1, 0, 1])
    assert priors(ds)[1].tolist() == [1.0]


def test_tables_match_counting_oracle_exactly():
    protected = list("abcabcaab") + ["d"]
    target = [1, 0, 0, 1, 1, 0, 0, 1, 1, 1]
    tbl = tables(dataset_from_labels(protected, target))
    ref = count_oracle(protected, target)
    for i, a in enumerate(ref["levels"]):
        assert tbl.prior_protected[i] == float(ref["prior_protected"][a])
        for y in (0, 1):
            assert tbl.joint[i, y] == float(ref["joint"][(a, y)])
            assert tbl.p_target_given(y, a) == float(ref["y_given_a"][(a, y)])
            assert tbl.p_protected_given(a, y) == float(ref["a_given_y"][(a, y)])
    for y in (0, 1):
        assert tbl.prior_target[y] == float(ref["prior_target"][y])


def test_joints_and_posteriors_ops_agree_with_tables():
    ds = dataset_from_labels(list("aabbc"), [0, 1, 1, 1, 0])
    tbl = tables(ds)
    np.testing.assert_array_equal(joints(ds), tbl.joint)
    y_given_a, a_given_y = posteriors(ds)
    np.testing.assert_array_equal(y_given_a.data, tbl.cond_target_given_protected.data)
    np.testing.assert_array_equal(a_given_y.data, tbl.cond_protected_given_target.data)


def test_independent_data_conditionals_equal_prior():
    # each level has the same 1:3 split
    protected = ["a"] * 4 + ["b"] * 8 + ["c"] * 12
    target = ([0] + [1] * 3) * 6
    tbl = tables(dataset_from_labels(protected, target))
    for level in "abc":
        assert tbl.p_target_given(1, level) == pytest.approx(tbl.p_target(1), abs=1e-12)


def test_zero_support_cell_forces_degenerate_conditional():
    ds = dataset_from_labels(["mixed"] * 3 + ["big"] * 10, [1, 1, 1] + [0, 1] * 5)
    tbl = tables(ds)
    assert tbl.p_joint("mixed", 0) == 0.0
    assert tbl.p_target_given(1, "mixed") == 1.0
    assert tbl.p_target_given(0, "mixed") == 0.0
    flags = zero_support_flags(tbl)
    assert [(f.kind, f.level, f.target) for f in flags] == [(ZERO_SUPPORT, "mixed", 0)]
    assert "no target=0 examples" in flags[0].message


def test_undefined_when_target_level_empty():
    tbl = from_counts(("a", "b"), [[0, 3], [0, 2]])
    assert tbl.p_protected_given("a", 0) is UNDEFINED
    assert tbl.p_protected_given("a", 1) == 0.6
    assert np.ma.getmaskarray(tbl.cond_protected_given_target)[:, 0].all()


def test_low_prior_flags():
    ds = dataset_from_labels(["rare"] + ["common"] * 199, [0] + [0, 1] * 99 + [1])
    flags = zero_support_flags(tables(ds))
    kinds = [(f.kind, f.level) for f in flags]
    assert (LOW_PRIOR, "rare") in kinds
    assert (ZERO_SUPPORT, "rare") in kinds
    # severity ordering: zero support before low prior
    assert kinds.index((ZERO_SUPPORT, "rare")) < kinds.index((LOW_PRIOR, "rare"))
    assert zero_support_flags(tables(ds), low_prior_threshold=0.0) == [
        f for f in flags if f.kind == ZERO_SUPPORT
    ]


def test_balanced_data_has_no_flags():
    ds = dataset_from_labels(list("aabb"), [0, 1, 0, 1])
    assert zero_support_flags(tables(ds)) == []
    assert high_skew_flags(tables(ds)) == []


def test_high_skew_flag():
    ds = dataset_from_labels(["x"] * 10 + ["y"] * 10, [1] * 9 + [0] + [0] * 8 + [1] * 2)
    flags = high_skew_flags(tables(ds), threshold=0.2)
    assert [(f.kind, f.level) for f in flags] == [(HIGH_SKEW, "x"), (HIGH_SKEW, "y")]
    assert high_skew_flags(tables(ds), threshold=0.4) == []


# stated inputs: priors (0.6, 0.35, 0.15); P(Y=0 | A) = (0.7, 0.2, 0.6)
TABLE3_Y0 = (0.42, 0.07, 0.09)
TABLE3_Y1 = (0.18, 0.28, 0.06)


def test_motivating_joints_from_stated_priors():
    tbl = motivating()
    assert tbl.warnings and "1.1" in tbl.warnings[0]
    assert np.round(tbl.stated_joint[:, 0], 2).tolist() == list(TABLE3_Y0)
    assert np.round(tbl.stated_joint[:, 1], 2).tolist() == list(TABLE3_Y1)


def test_motivating_normalized_outputs_form_a_partition():
    tbl = motivating()
    assert tbl.prior_protected.sum() == pytest.approx(1.0, abs=1e-12)
    assert tbl.joint.sum() == pytest.approx(1.0, abs=1e-12)
    assert tbl.prior_target.sum() == pytest.approx(1.0, abs=1e-12)
    assert tbl.p_target_given(0, "white") == 0.7
    assert tbl.p_target_given(1, "black") == 0.8


def test_motivating_posteriors_do_not_depend_on_normalization():
    tbl = motivating()
    # hand computation from the stated joints: 0.18 / (0.18 + 0.28 + 0.06)
    assert tbl.p_protected_given("white", 1) == pytest.approx(0.18 / 0.52, rel=1e-12)
    assert tbl.p_protected_given("black", 1) == pytest.approx(0.28 / 0.52, rel=1e-12)
    assert tbl.p_protected_given("white", 0) == pytest.approx(0.42 / 0.58, rel=1e-12)


def test_specified_independence_posteriors_equal_priors():
    tbl = from_specified_priors([0.25] * 4, [[0.3, 0.7]] * 4, list("abcd"))
    assert tbl.warnings == ()
    assert tbl.stated_joint is None
    for level in "abcd":
        assert tbl.p_protected_given(level, 1) == pytest.approx(0.25, abs=1e-12)


def test_specified_priors_validation():
    with pytest.raises(NegativeProbability):
        from_specified_priors([0.5, -0.1], [[0.5, 0.5], [0.5, 0.5]])
    with pytest.raises(RowNotNormalized):
        from_specified_priors([0.5, 0.5], [[0.5, 0.5], [0.5, 0.6]])


def test_bayes_posteriors_total_probability_form():
    prior = np.array([0.2, 0.5, 0.3])
    cond = np.array([[0.1, 0.9], [0.6, 0.4], [0.5, 0.5]])
    p_target, a_given_y = bayes_posteriors(prior, cond)
    assert p_target[1] == pytest.approx(0.2 * 0.9 + 0.5 * 0.4 + 0.3 * 0.5, abs=1e-15)
    assert a_given_y[0, 1] == pytest.approx(0.18 / p_target[1], abs=1e-15)
