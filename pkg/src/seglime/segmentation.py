"""Six ways to cut a time-series window into interpretable segments.

A segment plays the role a superpixel plays for images: a temporally
contiguous run of timesteps within one feature that is switched on or off
as a unit when the surrogate model samples the neighborhood of the input.

Algorithms
----------
uniform      fixed-size windows, the remainder folded into the last one
exponential  window lengths round(e^0), round(e^1), ... so late timesteps
             sit in longer windows
slopes       cut where the matrix profile changes fastest (two scorings:
             absolute gradient, or consecutive differences of the sorted
             profile mapped back to their origin)
bins_min /   discretize the matrix profile into k equal-width bins; every
bins_max     covering subsequence competes for each timestep and the
             smallest (min) or largest (max) bin value claims it; maximal
             runs of equal claimed values become segments
sax          symbolize values into vertical equal-width bins, use maximal
             runs of equal symbols as segments, and grow the bin count from
             3 until the run count lands within +/-10% of the requested k

Every feature column is segmented independently; segment ids are assigned
in (feature, time) order and are globally unique across features.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidKError, InvalidWindowError, TooShortError
from .matrix_profile import compute_matrix_profile
from .types import Sample, SegmentMap, validate_sample

ALGORITHMS = ("uniform", "exponential", "slopes", "bins_min", "bins_max", "sax")
SLOPE_VARIANTS = ("gradient", "sorted")

# A matrix profile whose min-max range is this small (relative to its
# magnitude) carries no usable structure; bins treat it as a single bin.
DEGENERATE_PROFILE_RANGE = 1e-6

SAX_BASE_BINS = 3


def default_window_size(num_timesteps: int) -> int:
    """Default subsequence / window length: T/8, at least 2."""
    return max(2, num_timesteps // 8)


@dataclass(frozen=True)
class SegmenterConfig:
    """Parameters for one segmentation algorithm.

    m is the uniform window size or matrix-profile subsequence length
    (resolved to default_window_size(T) when None), k the partition count
    for slopes / bins / sax, and slope_variant picks the slopes scoring.
    """

    algorithm: str
    m: int | None = None
    k: int = 8
    slope_variant: str = "gradient"

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise InvalidKError(
                f"unknown algorithm {self.algorithm!r}, expected one of {ALGORITHMS}"
            )
        if self.m is not None and self.m < 2:
            raise InvalidWindowError(f"m must be >= 2, got {self.m}")
        if self.k < 2:
            raise InvalidKError(f"k must be >= 2, got {self.k}")
        if self.slope_variant not in SLOPE_VARIANTS:
            raise InvalidKError(
                f"unknown slope variant {self.slope_variant!r}, expected one of {SLOPE_VARIANTS}"
            )

    def resolved_m(self, num_timesteps: int) -> int:
        return self.m if self.m is not None else default_window_size(num_timesteps)


def segment(sample, config: SegmenterConfig) -> SegmentMap:
    """Run the configured algorithm on one sample."""
    sample = validate_sample(sample)
    T = sample.num_timesteps
    m = config.resolved_m(T)
    if config.algorithm == "uniform":
        return segment_uniform(sample, m)
    if config.algorithm == "exponential":
        return segment_exponential(sample)
    if config.algorithm == "slopes":
        return segment_slopes(sample, m, config.k, config.slope_variant)
    if config.algorithm == "bins_min":
        return segment_bins(sample, m, config.k, "min")
    if config.algorithm == "bins_max":
        return segment_bins(sample, m, config.k, "max")
    return segment_sax(sample, config.k)


def _stack_columns(column_labels: list[np.ndarray]) -> SegmentMap:
    """Combine per-feature label columns, offsetting ids to stay unique."""
    offset = 0
    shifted = []
    for col in column_labels:
        shifted.append(col + offset)
        offset += int(col.max()) + 1
    labels = np.stack(shifted, axis=1)
    return SegmentMap(labels=labels, num_segments=offset)


def _labels_from_lengths(lengths: list[int]) -> np.ndarray:
    return np.repeat(np.arange(len(lengths)), lengths)


def _labels_from_borders(T: int, borders: list[int]) -> np.ndarray:
    """Cut [0, T) at the given positions; a border b splits between b-1 and b."""
    edges = [0] + sorted(borders) + [T]
    lengths = [b - a for a, b in zip(edges, edges[1:])]
    return _labels_from_lengths(lengths)


def _runs_to_labels(values: np.ndarray) -> np.ndarray:
    """Collapse maximal runs of equal values into consecutive segment ids."""
    changes = np.concatenate(([0], np.cumsum(values[1:] != values[:-1])))
    return changes.astype(np.int64)


def segment_uniform(sample, m: int) -> SegmentMap:
    """Non-overlapping m-sized windows; the last absorbs the remainder.

    Per feature there are floor(T/m) segments: the first ones have exactly
    m timesteps, the final one has m + (T mod m).
    """
    sample = validate_sample(sample)
    T = sample.num_timesteps
    if m < 1 or m > T:
        raise InvalidWindowError(f"window size must be in [1, {T}], got {m}")
    d = T // m
    lengths = [m] * d
    lengths[-1] += T % m
    column = _labels_from_lengths(lengths)
    return _stack_columns([column] * sample.num_features)


def exponential_lengths(T: int) -> list[int]:
    """Window lengths round(e^0), round(e^1), ... with the remainder last."""
    if T < 3:
        raise TooShortError(f"need at least 3 timesteps, got {T}")
    lengths: list[int] = []
    total = 0
    i = 0
    while True:
        term = round(math.exp(i))
        if total + term >= T:
            break
        lengths.append(term)
        total += term
        i += 1
    lengths.append(T - total)
    return lengths


def segment_exponential(sample) -> SegmentMap:
    """Exponentially growing windows, so late timesteps share longer ones."""
    sample = validate_sample(sample)
    column = _labels_from_lengths(exponential_lengths(sample.num_timesteps))
    return _stack_columns([column] * sample.num_features)


def _slope_borders(profile: np.ndarray, k: int, variant: str) -> list[int]:
    j = len(profile)
    if variant == "gradient":
        scores = np.abs(np.diff(profile))
        positions = np.arange(j - 1)
    else:
        order = np.argsort(profile, kind="stable")
        scores = np.diff(profile[order])
        # attribute each jump to the element after it: the first profile
        # index on the high side of the gap
        positions = order[1:]
    # k largest scores, ties broken toward the earlier profile index
    ranking = np.lexsort((positions, -scores))
    chosen = positions[ranking[:k]]
    return sorted({int(b) for b in chosen} - {0})


def segment_slopes(sample, m: int, k: int, variant: str = "gradient") -> SegmentMap:
    """Cut at the k largest matrix-profile slope scores, per feature.

    A selected profile index b becomes a border between timesteps b-1 and
    b; borders at 0 are dropped and duplicates collapse, so each feature
    ends up with between 1 and k+1 segments.
    """
    sample = validate_sample(sample)
    T = sample.num_timesteps
    if variant not in SLOPE_VARIANTS:
        raise InvalidKError(f"unknown slope variant {variant!r}")
    if k < 1 or k >= T - m + 1:
        raise InvalidKError(f"k must be in [1, {T - m}], got {k}")
    columns = []
    for f in range(sample.num_features):
        profile = compute_matrix_profile(sample.values[:, f], m).distances
        borders = _slope_borders(profile, k, variant)
        columns.append(_labels_from_borders(T, borders))
    return _stack_columns(columns)


def _bin_profile(profile: np.ndarray, k: int) -> np.ndarray:
    """Equal-width discretization of the profile into bins 0..k-1.

    Lower bins hold lower distances. A profile whose range is (numerically)
    empty collapses to a single bin.
    """
    lo = float(profile.min())
    hi = float(profile.max())
    if hi - lo < DEGENERATE_PROFILE_RANGE * max(1.0, hi):
        return np.zeros(len(profile), dtype=np.int64)
    bins = np.floor((profile - lo) / (hi - lo) * k).astype(np.int64)
    return np.minimum(bins, k - 1)


def _claimed_bin_values(bins: np.ndarray, m: int, mode: str) -> np.ndarray:
    """Resolve the sliding-window contention: per timestep, the winning bin.

    Profile index i covers timesteps [i, i+m); among the covering indices
    the smallest (mode='min') or largest (mode='max') bin value claims the
    timestep, ties going to the earlier index.
    """
    j = len(bins)
    n = j + m - 1
    claimed = np.empty(n, dtype=np.int64)
    for t in range(n):
        start = max(0, t - m + 1)
        stop = min(j, t + 1)
        window = bins[start:stop]
        claimed[t] = window.min() if mode == "min" else window.max()
    return claimed


def segment_bins(sample, m: int, k: int, mode: str) -> SegmentMap:
    """Matrix-profile bin segmentation (mode 'min' or 'max'), per feature."""
    sample = validate_sample(sample)
    if mode not in ("min", "max"):
        raise InvalidKError(f"mode must be 'min' or 'max', got {mode!r}")
    if k < 2:
        raise InvalidKError(f"k must be >= 2, got {k}")
    columns = []
    for f in range(sample.num_features):
        profile = compute_matrix_profile(sample.values[:, f], m).distances
        bins = _bin_profile(profile, k)
        claimed = _claimed_bin_values(bins, m, mode)
        columns.append(_runs_to_labels(claimed))
    return _stack_columns(columns)


def sax_transform(series, b: int) -> np.ndarray:
    """Symbolize a series by equal-width vertical bins over [min, max].

    Returns one symbol in 0..b-1 per point; bins are half-open with the top
    bin closed, so the maximum maps to b-1. A constant series symbolizes to
    all zeros.
    """
    if b < 2:
        raise InvalidKError(f"need at least 2 bins, got {b}")
    series = np.asarray(series, dtype=float).ravel()
    lo = float(series.min())
    hi = float(series.max())
    if hi == lo:
        return np.zeros(len(series), dtype=np.int64)
    symbols = np.floor((series - lo) / (hi - lo) * b).astype(np.int64)
    return np.minimum(symbols, b - 1)


def sax_tolerance_band(k: int) -> tuple[int, int]:
    """Accepted segment-count interval: +/-10% of k, rounded outward,
    widened to at least +/-1 for small k."""
    lower = (9 * k) // 10
    upper = -((-11 * k) // 10)
    if k <= 10:
        lower = min(lower, k - 1)
        upper = max(upper, k + 1)
    return max(1, lower), upper


def _sax_column(series: np.ndarray, k: int) -> np.ndarray:
    T = len(series)
    lower, upper = sax_tolerance_band(k)
    best_b = None
    best_gap = None
    for b in range(SAX_BASE_BINS, T + 1):
        symbols = sax_transform(series, b)
        count = 1 + int(np.count_nonzero(symbols[1:] != symbols[:-1]))
        if lower <= count <= upper:
            best_b = b
            break
        gap = abs(count - k)
        if best_gap is None or gap < best_gap:
            best_gap = gap
            best_b = b
    return _runs_to_labels(sax_transform(series, best_b))


def segment_sax(sample, k: int) -> SegmentMap:
    """Symbol-run segmentation, growing the bin count toward k runs.

    Starts at 3 vertical bins and increments until the number of maximal
    equal-symbol runs lands inside sax_tolerance_band(k); if no bin count
    up to T manages that, the closest one (smallest on ties) is used.
    """
    sample = validate_sample(sample)
    T = sample.num_timesteps
    if not (2 <= k < T):
        raise InvalidKError(f"k must be in [2, {T - 1}], got {k}")
    columns = [_sax_column(sample.values[:, f], k) for f in range(sample.num_features)]
    return _stack_columns(columns)
