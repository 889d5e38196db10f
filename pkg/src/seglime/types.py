"""Core value types shared by every other module.

Conventions used throughout the package:

* a *sample* is one model input window, a float array of shape (T, F)
  with T timesteps and F features;
* a *segment map* assigns every (timestep, feature) cell to exactly one
  segment id; ids are contiguous from 0, globally unique across features,
  and each feature column is cut into contiguous runs of timesteps;
* a *mask* is a 1-D 0/1 vector over segment ids (1 = keep, 0 = replace);
  batches of masks are stacked into a 2-D array, one mask per row.

All types are immutable after construction (arrays are copied and marked
read-only), so they can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import (
    LengthMismatchError,
    NonFiniteValueError,
    NonRectangularError,
    TooShortError,
)


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Sample:
    """One multivariate window of shape (T, F). Use validate_sample() to build."""

    values: np.ndarray

    @property
    def num_timesteps(self) -> int:
        return self.values.shape[0]

    @property
    def num_features(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


def validate_sample(values) -> Sample:
    """Check rectangularity, finiteness, and T >= 2, then wrap the array.

    Raises NonRectangularError, NonFiniteValueError, or TooShortError with
    the offending index.
    """
    if isinstance(values, Sample):
        return values
    if isinstance(values, np.ndarray):
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if values.ndim != 2:
            raise NonRectangularError(0)
        arr = values.astype(float, copy=True)
    else:
        rows = list(values)
        if rows and np.isscalar(rows[0]):
            rows = [[v] for v in rows]
        width = len(rows[0]) if rows else 0
        for r, row in enumerate(rows):
            if len(row) != width:
                raise NonRectangularError(r)
        arr = np.array(rows, dtype=float)
    if arr.shape[0] < 2:
        raise TooShortError(f"need at least 2 timesteps, got {arr.shape[0]}")
    if arr.shape[1] < 1:
        raise TooShortError("need at least 1 feature")
    bad = np.argwhere(~np.isfinite(arr))
    if len(bad):
        raise NonFiniteValueError(tuple(int(i) for i in bad[0]))
    arr.setflags(write=False)
    return Sample(values=arr)


@dataclass(frozen=True)
class SegmentMap:
    """Cell-to-segment assignment for one sample.

    labels has the sample's (T, F) shape; entries are segment ids drawn
    from the contiguous set {0, ..., num_segments - 1}. Each id appears at
    least once, lives in exactly one feature column, and covers one
    contiguous run of timesteps there.
    """

    labels: np.ndarray
    num_segments: int

    def __post_init__(self):
        object.__setattr__(self, "labels", _frozen_array(self.labels, np.int64))
        _validate_segment_map(self.labels, self.num_segments)

    @property
    def shape(self) -> tuple[int, int]:
        return self.labels.shape

    def segment_cells(self, segment_id: int) -> list[tuple[int, int]]:
        ts, fs = np.nonzero(self.labels == segment_id)
        return [(int(t), int(f)) for t, f in zip(ts, fs)]


def _validate_segment_map(labels: np.ndarray, num_segments: int) -> None:
    if labels.ndim != 2:
        raise ValueError("labels must be 2-D (T, F)")
    if num_segments < 1:
        raise ValueError("num_segments must be positive")
    seen = set()
    for f in range(labels.shape[1]):
        column = labels[:, f]
        boundaries = np.flatnonzero(np.diff(column) != 0) + 1
        starts = np.concatenate(([0], boundaries))
        run_values = column[starts]
        unique_vals = set(int(v) for v in run_values)
        if len(unique_vals) != len(run_values):
            raise ValueError(f"segment split into non-contiguous runs in feature {f}")
        overlap = seen & unique_vals
        if overlap:
            raise ValueError(f"segment ids {sorted(overlap)} appear in more than one feature")
        seen |= unique_vals
    if seen != set(range(num_segments)):
        raise ValueError(
            f"labels must cover exactly 0..{num_segments - 1}, got {sorted(seen)}"
        )


@dataclass(frozen=True)
class Attribution:
    """Per-cell relevance for one explained sample.

    weights is the per-cell broadcast of segment_coefficients through the
    generating segment map (weights[t, f] == segment_coefficients[label]),
    so the two carry the same information at different granularity.
    """

    weights: np.ndarray
    intercept: float
    segment_coefficients: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "weights", _frozen_array(self.weights, float))
        object.__setattr__(
            self, "segment_coefficients", _frozen_array(self.segment_coefficients, float)
        )
        if not np.isfinite(self.weights).all():
            raise ValueError("attribution weights must be finite")
        if not np.isfinite(self.segment_coefficients).all():
            raise ValueError("segment coefficients must be finite")
        if not np.isfinite(self.intercept):
            raise ValueError("intercept must be finite")

    @property
    def shape(self) -> tuple[int, int]:
        return self.weights.shape


@dataclass(frozen=True)
class Dataset:
    """A long series of shape (N, F) cut into fixed-length forecast windows.

    The window starting at row i covers rows [i, i + window_length) and its
    target is series[i + window_length, target_feature]: single-step-ahead
    forecasting of one designated feature.
    """

    series: np.ndarray
    window_length: int
    target_feature: int = 0
    feature_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        arr = np.asarray(self.series, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        object.__setattr__(self, "series", _frozen_array(arr, float))
        if self.window_length < 2:
            raise TooShortError("window_length must be >= 2")
        if arr.shape[0] < self.window_length + 1:
            raise TooShortError(
                f"need at least window_length + 1 = {self.window_length + 1} rows, got {arr.shape[0]}"
            )
        if not (0 <= self.target_feature < arr.shape[1]):
            raise LengthMismatchError(
                f"target_feature {self.target_feature} out of range for {arr.shape[1]} features"
            )
        bad = np.argwhere(~np.isfinite(arr))
        if len(bad):
            raise NonFiniteValueError(tuple(int(i) for i in bad[0]))
        if not self.feature_names:
            object.__setattr__(
                self, "feature_names", tuple(f"f{i}" for i in range(arr.shape[1]))
            )

    @property
    def num_windows(self) -> int:
        return self.series.shape[0] - self.window_length


def windows(dataset: Dataset) -> Iterator[tuple[Sample, float]]:
    """Yield every (window sample, one-step-ahead target) pair in order."""
    T = dataset.window_length
    for i in range(dataset.num_windows):
        sample = Sample(values=_frozen_array(dataset.series[i : i + T], float))
        target = float(dataset.series[i + T, dataset.target_feature])
        yield sample, target
