"""Independent reference implementations used as test oracles.

Everything in here is deliberately written the slow, obvious way and shares
no code with the library: brute-force double loops, per-cell scans, and
exhaustive searches. Tests compare library output against these.
"""

from __future__ import annotations

import math

import numpy as np


def brute_force_matrix_profile(series, m):
    """All-pairs z-normalized nearest-neighbor distances, double loop.

    Each subsequence is z-normalized from scratch with np.mean / np.std on
    the raw slice. Subsequences with std below 1e-12 are treated as the
    all-zeros vector. Pairs closer than ceil(m/2) are excluded. The pair
    distance is symmetric, so each pair is evaluated once and feeds the
    running minimum on both sides.
    """
    series = np.asarray(series, dtype=float)
    n = len(series)
    j = n - m + 1
    ez = math.ceil(m / 2)

    zforms = []
    for i in range(j):
        window = series[i : i + m]
        sd = np.std(window)
        if sd < 1e-12:
            zforms.append(np.zeros(m))
        else:
            zforms.append((window - np.mean(window)) / sd)

    best = np.full(j, np.inf)
    for i in range(j):
        for other in range(i + ez, j):
            delta = zforms[i] - zforms[other]
            d = math.sqrt(float(np.dot(delta, delta)))
            if d < best[i]:
                best[i] = d
            if d < best[other]:
                best[other] = d
    return best


def exponential_lengths_by_summation(total):
    """Window lengths round(e^0), round(e^1), ... with the remainder last.

    Emits terms while the running sum plus the next term is still < total,
    then appends whatever is left.
    """
    lengths = []
    running = 0
    i = 0
    while True:
        term = round(math.exp(i))
        if running + term >= total:
            break
        lengths.append(term)
        running += term
        i += 1
    lengths.append(total - running)
    return lengths


def bins_claimed_values(profile, m, k, mode):
    """Per-timestep claimed bin value, evaluated directly from the rule.

    Every profile index i covers timesteps [i, i+m). A timestep takes the
    bin value of the covering index with the smallest (mode='min') or
    largest (mode='max') bin, ties going to the earlier index.
    """
    profile = np.asarray(profile, dtype=float)
    j = len(profile)
    n = j + m - 1
    lo, hi = profile.min(), profile.max()
    if hi - lo < 1e-6 * max(1.0, hi):
        return np.zeros(n, dtype=int)
    bins = np.minimum((np.floor((profile - lo) / (hi - lo) * k)).astype(int), k - 1)

    claimed = np.empty(n, dtype=int)
    for t in range(n):
        best_bin = None
        for i in range(j):
            if not (i <= t < i + m):
                continue
            if best_bin is None:
                best_bin = bins[i]
            elif mode == "min" and bins[i] < best_bin:
                best_bin = bins[i]
            elif mode == "max" and bins[i] > best_bin:
                best_bin = bins[i]
        claimed[t] = best_bin
    return claimed


def count_runs(symbols):
    symbols = list(symbols)
    runs = 1
    for a, b in zip(symbols, symbols[1:]):
        if a != b:
            runs += 1
    return runs


def sax_symbols_reference(series, b):
    """Vertical equal-width binning, scanning bin edges one by one."""
    series = np.asarray(series, dtype=float)
    lo, hi = series.min(), series.max()
    if hi == lo:
        return np.zeros(len(series), dtype=int)
    edges = [lo + (hi - lo) * q / b for q in range(1, b)]
    out = []
    for x in series:
        sym = b - 1
        for q, edge in enumerate(edges):
            if x < edge:
                sym = q
                break
        out.append(sym)
    return np.array(out, dtype=int)


def sax_bscan(series, k, b_max):
    """Exhaustive scan over bin counts: (achievable within tolerance, counts).

    Returns the per-b run counts for b in [3, b_max] and whether any of them
    lands inside the +/-10 percent tolerance band around k.
    """
    lower = (9 * k) // 10
    upper = -((-11 * k) // 10)
    if k <= 10:
        lower = min(lower, k - 1)
        upper = max(upper, k + 1)
    counts = {}
    achievable = False
    for b in range(3, b_max + 1):
        c = count_runs(sax_symbols_reference(series, b))
        counts[b] = c
        if lower <= c <= upper:
            achievable = True
    return achievable, counts


def linear_segment_contributions(values, coefficients, labels, num_segments):
    """Closed-form attribution for a linear model under zero replacement.

    Zeroing segment s changes the forecast by exactly the sum of c*x over
    the segment's cells, so that sum is the expected surrogate coefficient.
    """
    contrib = np.zeros(num_segments)
    T, F = values.shape
    for t in range(T):
        for f in range(F):
            contrib[labels[t, f]] += coefficients[t, f] * values[t, f]
    return contrib


def replace_cells_loop(values, cells, kind):
    """Cell-by-cell replacement, the slow way."""
    out = np.array(values, dtype=float, copy=True)
    T, F = out.shape
    for (t, f) in cells:
        col = values[:, f]
        if kind == "zero":
            out[t, f] = 0.0
        elif kind == "mean":
            out[t, f] = float(np.mean(col))
        elif kind == "inverse":
            out[t, f] = float(np.max(col) + np.min(col) - values[t, f])
        else:
            raise ValueError(kind)
    return out


def masked_sample_loop(values, labels, mask, kind):
    """apply_mask oracle: replace every cell whose segment bit is 0."""
    cells = []
    T, F = values.shape
    for t in range(T):
        for f in range(F):
            if mask[labels[t, f]] == 0:
                cells.append((t, f))
    return replace_cells_loop(values, cells, kind)


def percentile_linear(sorted_values, pct):
    """Type-7 (linear interpolation) percentile on pre-sorted data."""
    n = len(sorted_values)
    if n == 1:
        return float(sorted_values[0])
    pos = pct / 100.0 * (n - 1)
    lo = int(math.floor(pos))
    hi = min(lo + 1, n - 1)
    frac = pos - lo
    return float(sorted_values[lo] * (1 - frac) + sorted_values[hi] * frac)
