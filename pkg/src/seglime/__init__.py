"""Segment-based local surrogate explanations for time series forecasters.

The pipeline: cut a window into interpretable segments (six algorithms),
sample on/off masks over the segments, replace switched-off segments with
non-informative values, predict every perturbed window with the black box,
fit a locally weighted ridge surrogate on (masks, predictions), and read
the coefficients as per-segment relevance. A perturbation-analysis harness
scores how much those relevances actually matter versus a random baseline.
"""

__version__ = "0.1.0"

from .adapters import (
    BuiltinAdapter,
    HttpAdapter,
    ModelAdapter,
    ProcessAdapter,
    parse_model_locator,
)
from .evaluation import (
    EvalConfig,
    EvalReport,
    fidelity_score,
    quality_metric,
    random_cells,
    run_perturbation_analysis,
    threshold_cells,
)
from .explainer import (
    ExplainConfig,
    SurrogateFit,
    explain,
    fit_surrogate,
    kernel_weight,
    sample_masks,
)
from .matrix_profile import MatrixProfile, compute_matrix_profile
from .models import (
    last_value_model,
    linear_model,
    masked_motif_model,
    mean_model,
    seasonal_naive_model,
)
from .replacement import apply_mask, apply_masks, perturb_cells, replacement_value
from .segmentation import (
    ALGORITHMS,
    SegmenterConfig,
    sax_transform,
    segment,
    segment_bins,
    segment_exponential,
    segment_sax,
    segment_slopes,
    segment_uniform,
)
from .types import (
    Attribution,
    Dataset,
    Sample,
    SegmentMap,
    validate_sample,
    windows,
)

__all__ = [
    "ALGORITHMS",
    "Attribution",
    "BuiltinAdapter",
    "Dataset",
    "EvalConfig",
    "EvalReport",
    "ExplainConfig",
    "HttpAdapter",
    "MatrixProfile",
    "ModelAdapter",
    "ProcessAdapter",
    "Sample",
    "SegmentMap",
    "SegmenterConfig",
    "SurrogateFit",
    "apply_mask",
    "apply_masks",
    "compute_matrix_profile",
    "explain",
    "fidelity_score",
    "fit_surrogate",
    "kernel_weight",
    "last_value_model",
    "linear_model",
    "masked_motif_model",
    "mean_model",
    "parse_model_locator",
    "perturb_cells",
    "quality_metric",
    "random_cells",
    "replacement_value",
    "run_perturbation_analysis",
    "sample_masks",
    "sax_transform",
    "seasonal_naive_model",
    "segment",
    "segment_bins",
    "segment_exponential",
    "segment_sax",
    "segment_slopes",
    "segment_uniform",
    "threshold_cells",
    "validate_sample",
    "windows",
]
