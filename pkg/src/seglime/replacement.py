"""Replacement strategies: fill deactivated cells with non-informative values.

Three kinds, all computed from the sample window itself (never from the
whole dataset, to keep explanations local):

* zero     -> 0
* mean     -> the cell's feature-column mean over the window
* inverse  -> reflection about the column's range midpoint,
              max + min - x, which is its own inverse

Cells that are kept are passed through by selection, not arithmetic, so
they stay bit-identical to the input.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidKError, LengthMismatchError, OutOfBoundsError
from .types import Sample, SegmentMap, validate_sample

KINDS = ("zero", "inverse", "mean")


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise InvalidKError(f"unknown replacement kind {kind!r}, expected one of {KINDS}")


def replacement_matrix(values: np.ndarray, kind: str) -> np.ndarray:
    """The full (T, F) array of would-be replacement values for a window."""
    _check_kind(kind)
    if kind == "zero":
        return np.zeros_like(values)
    if kind == "mean":
        return np.broadcast_to(values.mean(axis=0), values.shape).copy()
    return values.max(axis=0) + values.min(axis=0) - values


def replacement_value(sample, t: int, f: int, kind: str) -> float:
    """Replacement value for one cell."""
    sample = validate_sample(sample)
    T, F = sample.shape
    if not (0 <= t < T and 0 <= f < F):
        raise OutOfBoundsError(f"cell ({t}, {f}) outside {T}x{F} sample")
    return float(replacement_matrix(sample.values, kind)[t, f])


def apply_mask(sample, seg: SegmentMap, mask, kind: str) -> Sample:
    """Keep cells whose segment bit is 1, replace the rest."""
    sample = validate_sample(sample)
    mask = np.asarray(mask)
    if mask.shape != (seg.num_segments,):
        raise LengthMismatchError(
            f"mask length {mask.shape} does not match {seg.num_segments} segments"
        )
    out = apply_masks(sample, seg, mask.reshape(1, -1), kind)[0]
    out.setflags(write=False)
    return Sample(values=out)


def apply_masks(sample, seg: SegmentMap, masks, kind: str) -> np.ndarray:
    """Vectorized apply_mask over a batch: (n, d) masks -> (n, T, F) windows."""
    sample = validate_sample(sample)
    masks = np.asarray(masks)
    if masks.ndim != 2 or masks.shape[1] != seg.num_segments:
        raise LengthMismatchError(
            f"mask batch shape {masks.shape} does not match {seg.num_segments} segments"
        )
    repl = replacement_matrix(sample.values, kind)
    keep = masks[:, seg.labels].astype(bool)
    return np.where(keep, sample.values[None, :, :], repl[None, :, :])


def perturb_cells(sample, cells, kind: str) -> Sample:
    """Replace exactly the listed (t, f) cells, leave everything else alone."""
    sample = validate_sample(sample)
    _check_kind(kind)
    T, F = sample.shape
    out = sample.values.copy()
    repl = replacement_matrix(sample.values, kind)
    for t, f in cells:
        if not (0 <= t < T and 0 <= f < F):
            raise OutOfBoundsError(f"cell ({t}, {f}) outside {T}x{F} sample")
        out[t, f] = repl[t, f]
    out.setflags(write=False)
    return Sample(values=out)
