"""The local-surrogate loop: mask, perturb, predict, fit, attribute.

One explanation of sample x under model f:

1. segment x into d interpretable components;
2. draw binary masks over the d segments (the first mask keeps all of
   them, every other bit is an independent Bernoulli(keep_probability),
   all-zero draws are rejected because they carry no locality);
3. build the perturbed window for each mask by replacing switched-off
   segments with non-informative values and collect f's predictions;
4. weight each mask by its closeness to the all-ones mask,
   w = exp(-D^2 / width^2) with D the Euclidean mask-space distance;
5. fit a weighted ridge regression of predictions on mask bits (intercept
   unpenalized) and read the coefficients as segment relevances.

Positive coefficient = the segment's presence pushes the forecast up.
Everything is deterministic given the seed and a deterministic model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg

from .adapters import ModelAdapter
from .errors import ConfigError, LengthMismatchError, SingularSystemError
from .replacement import apply_masks
from .segmentation import SegmenterConfig, segment
from .types import Attribution, validate_sample

DEFAULT_NUM_MASKS = 1000
DEFAULT_KEEP_PROBABILITY = 0.5
DEFAULT_RIDGE_STRENGTH = 1.0
KERNEL_WIDTH_SCALE = 0.75


@dataclass(frozen=True)
class ExplainConfig:
    """Knobs for one explanation run.

    kernel_width=None resolves to 0.75 * sqrt(num_segments) once the
    segment count is known. num_masks must stay >= num_segments + 2 or the
    surrogate is unsolvable.
    """

    num_masks: int = DEFAULT_NUM_MASKS
    keep_probability: float = DEFAULT_KEEP_PROBABILITY
    kernel_width: float | None = None
    ridge_strength: float = DEFAULT_RIDGE_STRENGTH
    rng_seed: int = 0
    replacement: str = "zero"
    batch_size: int = 256

    def __post_init__(self):
        if self.num_masks < 3:
            raise ConfigError(f"num_masks must be >= 3, got {self.num_masks}")
        if not (0.0 < self.keep_probability < 1.0):
            raise ConfigError(f"keep_probability must be in (0, 1), got {self.keep_probability}")
        if self.kernel_width is not None and self.kernel_width <= 0:
            raise ConfigError(f"kernel_width must be positive, got {self.kernel_width}")
        if self.ridge_strength < 0:
            raise ConfigError(f"ridge_strength must be >= 0, got {self.ridge_strength}")
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be >= 1, got {self.batch_size}")

    def with_seed(self, seed: int) -> "ExplainConfig":
        return replace(self, rng_seed=seed)

    def resolved_kernel_width(self, num_segments: int) -> float:
        if self.kernel_width is not None:
            return self.kernel_width
        return KERNEL_WIDTH_SCALE * math.sqrt(num_segments)


@dataclass(frozen=True)
class SurrogateFit:
    coefficients: np.ndarray
    intercept: float
    training_loss: float


def sample_masks(num_segments: int, config: ExplainConfig) -> np.ndarray:
    """Draw the mask batch, one mask per row; row 0 keeps every segment.

    All-zero draws are rejected and redrawn, so each mask keeps at least
    one segment. Deterministic given config.rng_seed.
    """
    if num_segments < 1:
        raise ConfigError("need at least one segment")
    rng = np.random.default_rng(config.rng_seed)
    masks = np.ones((config.num_masks, num_segments), dtype=np.int8)
    for i in range(1, config.num_masks):
        bits = (rng.random(num_segments) < config.keep_probability).astype(np.int8)
        while not bits.any():
            bits = (rng.random(num_segments) < config.keep_probability).astype(np.int8)
        masks[i] = bits
    return masks


def kernel_weight(mask, kernel_width: float) -> float:
    """Proximity of one mask to the all-ones mask, in (0, 1]."""
    zeros = int(np.sum(np.asarray(mask) == 0))
    return math.exp(-zeros / (kernel_width * kernel_width))


def kernel_weights(masks: np.ndarray, kernel_width: float) -> np.ndarray:
    zeros = (masks == 0).sum(axis=1)
    return np.exp(-zeros / (kernel_width * kernel_width))


def fit_surrogate(masks, predictions, weights, ridge_strength: float) -> SurrogateFit:
    """Weighted ridge fit of predictions on mask bits.

    Minimizes sum_i w_i (y_i - b0 - beta . z_i)^2 + lambda * ||beta||^2
    with the intercept left out of the penalty, via a Cholesky solve of the
    normal equations.
    """
    Z = np.asarray(masks, dtype=float)
    y = np.asarray(predictions, dtype=float).ravel()
    w = np.asarray(weights, dtype=float).ravel()
    n, d = Z.shape
    if len(y) != n or len(w) != n:
        raise LengthMismatchError(
            f"{n} masks, {len(y)} predictions, {len(w)} weights"
        )
    if n < d + 2:
        raise ConfigError(f"need at least {d + 2} masks to fit {d} coefficients, got {n}")

    X = np.empty((n, d + 1))
    X[:, 0] = 1.0
    X[:, 1:] = Z
    Xw = X * w[:, None]
    A = X.T @ Xw
    A[1:, 1:] += ridge_strength * np.eye(d)
    rhs = Xw.T @ y
    try:
        beta = scipy.linalg.cho_solve(scipy.linalg.cho_factor(A), rhs)
    except (scipy.linalg.LinAlgError, np.linalg.LinAlgError) as exc:
        raise SingularSystemError(
            "normal equations are singular (degenerate masks at zero ridge strength)"
        ) from exc
    residuals = y - X @ beta
    loss = float((w * residuals * residuals).sum() / w.sum())
    return SurrogateFit(coefficients=beta[1:], intercept=float(beta[0]), training_loss=loss)


def explain(
    sample,
    segmenter: SegmenterConfig,
    model: ModelAdapter,
    config: ExplainConfig = ExplainConfig(),
) -> Attribution:
    """Explain one sample: returns per-cell relevance weights.

    The segment map is a pure function of (sample, segmenter), so callers
    needing it can recompute it with segmentation.segment().
    """
    sample = validate_sample(sample)
    seg = segment(sample, segmenter)
    d = seg.num_segments
    if config.num_masks < d + 2:
        raise ConfigError(
            f"num_masks={config.num_masks} too small for {d} segments (need >= {d + 2})"
        )

    masks = sample_masks(d, config)
    perturbed = apply_masks(sample, seg, masks, config.replacement)
    predictions = np.concatenate(
        [
            model.predict_batch(perturbed[start : start + config.batch_size])
            for start in range(0, len(perturbed), config.batch_size)
        ]
    )
    weights = kernel_weights(masks, config.resolved_kernel_width(d))
    fit = fit_surrogate(masks, predictions, weights, config.ridge_strength)
    return Attribution(
        weights=fit.coefficients[seg.labels],
        intercept=fit.intercept,
        segment_coefficients=fit.coefficients,
    )
