"""Self-join matrix profile: nearest-neighbor z-normalized distances.

For a series of length n and subsequence length m there are j = n - m + 1
subsequences. The profile stores, for each of them, the Euclidean distance
between its z-normalized form and the z-normalized form of its nearest
neighbor, where neighbors closer than ceil(m / 2) positions are excluded as
trivial self-matches.

The computation is a vectorized brute force: one pass builds all
z-normalized subsequences from rolling means and standard deviations, then
each row's distances to every other row are formed explicitly and reduced
to the admissible minimum. O(n^2 * m) work, fine up to a few thousand
points, and free of the cancellation issues that haunt the FFT shortcuts
near zero distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import WindowTooLargeError, WindowTooSmallError

# Below this standard deviation a subsequence is considered flat and its
# z-normalized form is defined as the all-zeros vector, so two flat
# subsequences have distance 0 and flat-vs-varying pairs get the varying
# side's norm (sqrt(m)). Keeps every distance finite.
FLAT_STD = 1e-12


@dataclass(frozen=True)
class MatrixProfile:
    distances: np.ndarray
    window_size: int

    def __post_init__(self):
        arr = np.asarray(self.distances, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "distances", arr)

    def __len__(self) -> int:
        return len(self.distances)


def znormalized_subsequences(series: np.ndarray, m: int) -> np.ndarray:
    """All m-length subsequences, each shifted/scaled to mean 0 and std 1.

    Flat subsequences (std < FLAT_STD) come out as all-zeros rows.
    """
    series = np.asarray(series, dtype=float)
    view = sliding_window_view(series, m)
    mu = view.mean(axis=1)
    sd = view.std(axis=1)
    flat = sd < FLAT_STD
    safe_sd = np.where(flat, 1.0, sd)
    z = (view - mu[:, None]) / safe_sd[:, None]
    z[flat] = 0.0
    return z


def exclusion_zone(m: int) -> int:
    return math.ceil(m / 2)


def compute_matrix_profile(series, m: int) -> MatrixProfile:
    """Nearest-neighbor z-normalized distance for every subsequence.

    Requires 2 <= m <= n/2 so every subsequence has at least one admissible
    (non-excluded) neighbor.
    """
    series = np.asarray(series, dtype=float).ravel()
    n = len(series)
    if m < 2:
        raise WindowTooSmallError(f"subsequence length must be >= 2, got {m}")
    if 2 * m > n:
        raise WindowTooLargeError(
            f"subsequence length {m} too large for series of length {n} (need m <= n/2)"
        )

    z = znormalized_subsequences(series, m)
    j = n - m + 1
    ez = exclusion_zone(m)
    idx = np.arange(j)
    profile = np.empty(j)
    for i in range(j):
        diff = z - z[i]
        dist_sq = np.einsum("ij,ij->i", diff, diff)
        dist_sq[np.abs(idx - i) < ez] = np.inf
        profile[i] = math.sqrt(dist_sq.min())
    return MatrixProfile(distances=profile, window_size=m)
