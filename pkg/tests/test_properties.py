"""Invariants over randomized datasets (hypothesis-driven)."""

import numpy as np
from hypothesis import given, settings, strategies as st

from invariants import (
    check_counting_oracle,
    check_dependence,
    check_independent_table,
    check_permutation_invariance,
    check_probability_identities,
    check_scaling,
)

LEVELS = [f"lvl{k}" for k in range(12)]


@st.composite
def labelled_rows(draw, max_rows=300):
    n_levels = draw(st.integers(1, 12))
    n = draw(st.integers(1, max_rows))
    protected = draw(st.lists(st.sampled_from(LEVELS[:n_levels]), min_size=n, max_size=n))
    target = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return protected, target


count_matrices = st.integers(1, 12).flatmap(
    lambda r: st.lists(st.tuples(st.integers(0, 200), st.integers(0, 200)), min_size=r, max_size=r)
)


@given(labelled_rows())
@settings(max_examples=150, deadline=None)
def test_counting_oracle(rows):
    check_counting_oracle(*rows)


@given(labelled_rows())
@settings(max_examples=150, deadline=None)
def test_partition_bayes_and_total_probability(rows):
    check_probability_identities(*rows)


@given(labelled_rows(), st.integers(0, 2**31))
@settings(max_examples=75, deadline=None)
def test_row_permutation_invariance(rows, seed):
    check_permutation_invariance(*rows, seed)


@given(count_matrices)
@settings(max_examples=200, deadline=None)
def test_chi_square_oracle_and_coefficient_identity(counts):
    check_dependence(np.array(counts))


@given(count_matrices, st.integers(2, 1000))
@settings(max_examples=150, deadline=None)
def test_count_scaling(counts, k):
    check_scaling(np.array(counts), k)


@given(
    st.lists(st.integers(1, 500), min_size=1, max_size=12),
    st.tuples(st.integers(1, 500), st.integers(1, 500)),
)
@settings(max_examples=150, deadline=None)
def test_independent_tables_have_zero_association(rows, cols):
    check_independent_table(np.array(rows), np.array(cols))
