import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import masked_sample_loop, replace_cells_loop
from seglime.errors import LengthMismatchError, OutOfBoundsError
from seglime.replacement import (
    apply_mask,
    apply_masks,
    perturb_cells,
    replacement_matrix,
    replacement_value,
)
from seglime.segmentation import SegmenterConfig, segment
from seglime.types import validate_sample


def sample_3x2():
    return validate_sample([[2.0, 0.0], [4.0, 5.0], [6.0, 10.0]])


class TestReplacementValue:
    def test_zero(self):
        assert replacement_value(sample_3x2(), 1, 0, "zero") == 0.0

    def test_mean_of_column(self):
        sample = sample_3x2()
        for t in range(3):
            assert replacement_value(sample, t, 0, "mean") == 4.0

    def test_inverse_reflects_about_range_midpoint(self):
        sample = validate_sample([[0.0], [10.0]])
        assert replacement_value(sample, 1, 0, "inverse") == 0.0
        assert replacement_value(sample, 0, 0, "inverse") == 10.0

    def test_out_of_bounds(self):
        with pytest.raises(OutOfBoundsError):
            replacement_value(sample_3x2(), 3, 0, "zero")


class TestApplyMask:
    def setup_method(self):
        rng = np.random.default_rng(0)
        self.sample = validate_sample(rng.normal(size=(12, 2)))
        self.seg = segment(self.sample, SegmenterConfig(algorithm="uniform", m=3))

    def test_all_ones_is_identity(self):
        out = apply_mask(self.sample, self.seg, np.ones(self.seg.num_segments), "mean")
        np.testing.assert_array_equal(out.values, self.sample.values)

    def test_all_zeros_with_zero_kind(self):
        out = apply_mask(self.sample, self.seg, np.zeros(self.seg.num_segments), "zero")
        np.testing.assert_array_equal(out.values, np.zeros((12, 2)))

    def test_single_segment_off_matches_cell_oracle(self):
        for kind in ("zero", "inverse", "mean"):
            mask = np.ones(self.seg.num_segments, dtype=int)
            mask[3] = 0
            out = apply_mask(self.sample, self.seg, mask, kind)
            want = masked_sample_loop(self.sample.values, self.seg.labels, mask, kind)
            np.testing.assert_array_equal(out.values, want)

    def test_untouched_cells_bit_equal_even_negative_zero(self):
        values = self.sample.values.copy()
        values[0, 0] = -0.0
        sample = validate_sample(values)
        mask = np.ones(self.seg.num_segments, dtype=int)
        mask[self.seg.labels[11, 1]] = 0
        out = apply_mask(sample, self.seg, mask, "mean")
        assert np.signbit(out.values[0, 0])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            apply_mask(self.sample, self.seg, np.ones(3), "zero")

    def test_batch_rows_match_single_calls(self):
        rng = np.random.default_rng(5)
        masks = (rng.random((8, self.seg.num_segments)) < 0.5).astype(int)
        masks[0] = 1
        batch = apply_masks(self.sample, self.seg, masks, "inverse")
        for row, mask in zip(batch, masks):
            np.testing.assert_array_equal(
                row, apply_mask(self.sample, self.seg, mask, "inverse").values
            )


class TestPerturbCells:
    def test_empty_set_is_identity(self):
        sample = sample_3x2()
        out = perturb_cells(sample, [], "inverse")
        np.testing.assert_array_equal(out.values, sample.values)

    def test_all_cells_zero(self):
        sample = sample_3x2()
        out = perturb_cells(sample, [(t, f) for t in range(3) for f in range(2)], "zero")
        np.testing.assert_array_equal(out.values, np.zeros((3, 2)))

    def test_matches_cell_loop_oracle(self):
        rng = np.random.default_rng(9)
        values = rng.normal(size=(10, 3))
        sample = validate_sample(values)
        cells = {(int(t), int(f)) for t, f in zip(rng.integers(0, 10, 12), rng.integers(0, 3, 12))}
        for kind in ("zero", "inverse", "mean"):
            out = perturb_cells(sample, sorted(cells), kind)
            # column means may differ from the oracle's by one ulp
            # (different reduction order); everything else is exact
            np.testing.assert_allclose(
                out.values, replace_cells_loop(values, sorted(cells), kind), atol=1e-12, rtol=0
            )

    def test_out_of_bounds(self):
        with pytest.raises(OutOfBoundsError):
            perturb_cells(sample_3x2(), [(0, 2)], "zero")


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**31), T=st.integers(2, 20), F=st.integers(1, 3))
def test_inverse_is_an_involution(seed, T, F):
    rng = np.random.default_rng(seed)
    sample = validate_sample(rng.normal(size=(T, F)) * 7.0 + 3.0)
    cells = sorted(
        {(int(t), int(f)) for t, f in zip(rng.integers(0, T, T), rng.integers(0, F, T))}
    )
    once = perturb_cells(sample, cells, "inverse")
    # the replacement statistics must come from the original window, so
    # reflect the perturbed cells manually about the original extremes
    col_max = sample.values.max(axis=0)
    col_min = sample.values.min(axis=0)
    twice = once.values.copy()
    for t, f in cells:
        twice[t, f] = col_max[f] + col_min[f] - once.values[t, f]
    np.testing.assert_allclose(twice, sample.values, atol=1e-12, rtol=0)


def test_inverse_apply_mask_twice_on_whole_column_segments_is_identity():
    # with one segment per feature column the reflection maps each column
    # onto itself, so even recomputing the extremes from the perturbed
    # window keeps the double application an identity
    rng = np.random.default_rng(21)
    sample = validate_sample(rng.normal(size=(9, 2)) * 4.0)
    seg = segment(sample, SegmenterConfig(algorithm="uniform", m=9))
    mask = np.array([0, 1])
    once = apply_mask(sample, seg, mask, "inverse")
    twice = apply_mask(once, seg, mask, "inverse")
    np.testing.assert_allclose(twice.values, sample.values, atol=1e-12, rtol=0)


def test_mean_replacement_statistics_are_per_window_per_feature():
    sample = validate_sample([[1.0, 100.0], [3.0, 300.0]])
    repl = replacement_matrix(sample.values, "mean")
    np.testing.assert_array_equal(repl, [[2.0, 200.0], [2.0, 200.0]])
