"""Tests for histogram accumulation and merging."""

import warnings

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from quench_lab.core.exceptions import InvalidInputError
from quench_lab.models.phase import TimeAveragedHistogram
from quench_lab.services.histogram import (
    accumulate,
    bin_indices,
    histogram_rows,
    merge,
    merge_all,
)


def _empty(n_bins=10):
    return TimeAveragedHistogram.empty(-1.0, 1.0, n_bins, name="x")


class TestAccumulate:
    """Test streaming accumulation."""

    def test_out_of_range_counts_in_total(self):
        """Test out-of-range samples only reach total_weight."""
        hist = accumulate(_empty(), np.array([0.05, 2.0, -3.0, np.nan]))
        assert hist.counts.sum() == 1.0
        assert hist.total_weight == 4.0
        assert hist.in_range_fraction() == 0.25

    def test_upper_edge_in_last_bin(self):
        """Test hi lands in the last bin and lo in the first."""
        idx = bin_indices(_empty(4), np.array([-1.0, 1.0, 0.0]))
        np.testing.assert_array_equal(idx, [0, 3, 2])

    def test_non_finite_values_cast_cleanly(self):
        """Test NaN, inf and huge values map to -1 without numpy warnings."""
        values = np.array([np.nan, np.inf, -np.inf, 1e300, -1e300, 0.5])
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            idx = bin_indices(_empty(4), values)
        np.testing.assert_array_equal(idx, [-1, -1, -1, -1, -1, 3])

    def test_weights(self):
        """Test weighted samples."""
        hist = accumulate(_empty(2), np.array([-0.5, 0.5]), np.array([1.0, 3.0]))
        np.testing.assert_array_equal(hist.counts, [1.0, 3.0])
        assert hist.total_weight == 4.0

    def test_weight_shape(self):
        """Test weights must match values."""
        with pytest.raises(InvalidInputError):
            accumulate(_empty(), np.zeros(3), np.ones(2))

    def test_time_window(self):
        """Test the sampled time window grows with batches."""
        hist = _empty()
        accumulate(hist, np.zeros(2), t=0.5)
        accumulate(hist, np.zeros(2), t=1.5)
        assert hist.t_window == (0.5, 1.5)

    def test_normalization(self):
        """Test density integrates to the in-range fraction within 1e-9."""
        rng = np.random.default_rng(0)
        hist = accumulate(_empty(50), rng.normal(0.0, 0.7, 10_000))
        integral = hist.density().sum() * hist.bin_width
        assert integral == pytest.approx(hist.in_range_fraction(), abs=1e-9)


class TestMerge:
    """Test exact merging."""

    def test_merge_adds(self):
        """Test counts and totals add and time windows combine."""
        a = accumulate(_empty(), np.array([0.1, 0.2]), t=1.0)
        b = accumulate(_empty(), np.array([0.1, 5.0]), t=2.0)
        merged = merge(a, b)
        assert merged.total_weight == 4.0
        assert merged.counts.sum() == 3.0
        assert merged.t_window == (1.0, 2.0)

    def test_empty_side_keeps_window(self):
        """Test an unsampled histogram does not widen the window."""
        a = accumulate(_empty(), np.array([0.1]), t=3.0)
        assert merge(_empty(), a).t_window == (3.0, 3.0)

    def test_binning_mismatch(self):
        """Test differing binning is rejected."""
        with pytest.raises(InvalidInputError):
            merge(_empty(10), _empty(12))

    def test_merge_all_requires_input(self):
        """Test merging nothing is an error."""
        with pytest.raises(InvalidInputError):
            merge_all([])

    def test_rows(self):
        """Test CSV rows pair centers with densities."""
        hist = accumulate(_empty(2), np.array([0.5]))
        assert histogram_rows(hist) == [(-0.5, 0.0), (0.5, 1.0)]


@pytest.mark.property
class TestMergeProperties:
    """Property tests for merge exactness."""

    @hypothesis_settings(max_examples=50, deadline=None)
    @given(
        values=arrays(
            np.float64,
            st.integers(1, 200),
            elements=st.floats(-1.5, 1.5, allow_nan=False),
        ),
        parts=st.integers(1, 6),
    )
    def test_split_and_merge_equals_single_pass(self, values, parts):
        """Test any split of unit-weight samples merges to the single-pass result."""
        single = accumulate(_empty(), values)
        chunks = np.array_split(values, parts)
        pieces = [accumulate(_empty(), chunk) for chunk in chunks]
        merged = merge_all(pieces)
        np.testing.assert_array_equal(merged.counts, single.counts)
        assert merged.total_weight == single.total_weight
