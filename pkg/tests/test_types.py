import numpy as np
import pytest

from seglime.errors import NonFiniteValueError, NonRectangularError, TooShortError
from seglime.types import Dataset, Sample, SegmentMap, validate_sample, windows


class TestValidateSample:
    def test_well_formed(self):
        sample = validate_sample([[1, 2], [3, 4], [5, 6]])
        assert sample.shape == (3, 2)
        assert sample.num_timesteps == 3
        assert sample.num_features == 2

    def test_nan_located(self):
        with pytest.raises(NonFiniteValueError) as err:
            validate_sample([[1.0], [float("nan")]])
        assert err.value.index == (1, 0)

    def test_inf_rejected(self):
        with pytest.raises(NonFiniteValueError):
            validate_sample([[1.0, 2.0], [np.inf, 3.0]])

    def test_ragged_row_located(self):
        with pytest.raises(NonRectangularError) as err:
            validate_sample([[1, 2], [3]])
        assert err.value.row == 1

    def test_too_short(self):
        with pytest.raises(TooShortError):
            validate_sample([[1.0, 2.0]])

    def test_univariate_list_promoted(self):
        sample = validate_sample([1.0, 2.0, 3.0])
        assert sample.shape == (3, 1)

    def test_values_read_only(self):
        sample = validate_sample([[1.0], [2.0]])
        with pytest.raises(ValueError):
            sample.values[0, 0] = 9.0

    def test_idempotent_on_sample(self):
        sample = validate_sample([[1.0], [2.0]])
        assert validate_sample(sample) is sample


class TestSegmentMap:
    def test_valid_map(self):
        labels = [[0, 2], [0, 2], [1, 3]]
        seg = SegmentMap(labels=np.array(labels), num_segments=4)
        assert seg.segment_cells(2) == [(0, 1), (1, 1)]

    def test_non_contiguous_run_rejected(self):
        labels = [[0], [1], [0]]
        with pytest.raises(ValueError, match="non-contiguous"):
            SegmentMap(labels=np.array(labels), num_segments=2)

    def test_missing_label_rejected(self):
        labels = [[0], [0], [2]]
        with pytest.raises(ValueError, match="cover exactly"):
            SegmentMap(labels=np.array(labels), num_segments=3)

    def test_label_shared_across_features_rejected(self):
        labels = [[0, 0], [1, 1]]
        with pytest.raises(ValueError, match="more than one feature"):
            SegmentMap(labels=np.array(labels), num_segments=2)


class TestDatasetWindows:
    def test_small_series(self):
        dataset = Dataset(series=np.array([1.0, 2.0, 3.0, 4.0, 5.0]), window_length=3)
        pairs = list(windows(dataset))
        assert len(pairs) == 2
        np.testing.assert_array_equal(pairs[0][0].values.ravel(), [1, 2, 3])
        assert pairs[0][1] == 4.0
        np.testing.assert_array_equal(pairs[1][0].values.ravel(), [2, 3, 4])
        assert pairs[1][1] == 5.0

    def test_single_window(self):
        dataset = Dataset(series=np.arange(25.0), window_length=24)
        assert dataset.num_windows == 1

    def test_long_window_count(self):
        dataset = Dataset(series=np.arange(100.0), window_length=72)
        assert dataset.num_windows == 28

    def test_target_feature(self):
        series = np.column_stack([np.arange(10.0), np.arange(10.0) + 100])
        dataset = Dataset(series=series, window_length=4, target_feature=1)
        _, target = next(iter(windows(dataset)))
        assert target == 104.0

    def test_too_short_rejected(self):
        with pytest.raises(TooShortError):
            Dataset(series=np.arange(10.0), window_length=10)
