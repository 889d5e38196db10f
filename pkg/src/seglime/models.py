"""Built-in analytic forecasters.

These stand in for real black boxes during testing: each maps one (T, F)
window to a single float. They are deliberately computed per window with
contiguous 1-D reductions so that results are bit-identical no matter how
windows are batched, and so an external server can mirror them exactly.

Catalog
-------
last_value            the window's final target-feature value
mean                  the window mean of the target feature
seasonal_naive(p)     the target-feature value p steps back from the end
linear(c, b)          sum(c * window) + b for a fixed (T, F) coefficient
                      array; the closed-form oracle for the explainer
masked_motif(t0, t1)  mean of feature 0 over timesteps [t0, t1); blind to
                      everything outside that region
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import UnknownModelError

BUILTIN_NAMES = ("last_value", "mean", "seasonal_naive", "linear", "masked_motif")


def builtin_catalog() -> dict[str, str]:
    """Locator syntax and one-line description of every builtin."""
    return {
        "last_value": "final target-feature value of the window",
        "mean": "window mean of the target feature",
        "seasonal_naive:P": "target-feature value P steps back from the end",
        "linear:PATH": "sum(c * window) + b with (c, b) from a JSON file",
        "masked_motif:T0:T1": "mean of feature 0 over [T0, T1); blind elsewhere",
    }


@dataclass(frozen=True)
class BuiltinModel:
    name: str
    predict_window: Callable[[np.ndarray], float]


def last_value_model(target_feature: int = 0) -> BuiltinModel:
    def predict(window: np.ndarray) -> float:
        return float(window[-1, target_feature])

    return BuiltinModel("last_value", predict)


def mean_model(target_feature: int = 0) -> BuiltinModel:
    def predict(window: np.ndarray) -> float:
        return float(np.ascontiguousarray(window[:, target_feature]).mean())

    return BuiltinModel("mean", predict)


def seasonal_naive_model(period: int, target_feature: int = 0) -> BuiltinModel:
    if period < 1:
        raise UnknownModelError(f"seasonal_naive period must be >= 1, got {period}")

    def predict(window: np.ndarray) -> float:
        if period > window.shape[0]:
            raise UnknownModelError(
                f"seasonal_naive period {period} exceeds window length {window.shape[0]}"
            )
        return float(window[window.shape[0] - period, target_feature])

    return BuiltinModel(f"seasonal_naive({period})", predict)


def linear_model(coefficients, bias: float = 0.0) -> BuiltinModel:
    coeffs = np.asarray(coefficients, dtype=float)

    def predict(window: np.ndarray) -> float:
        if window.shape != coeffs.shape:
            raise UnknownModelError(
                f"linear model expects shape {coeffs.shape}, got {window.shape}"
            )
        return float(np.ascontiguousarray(coeffs * window).sum() + bias)

    return BuiltinModel("linear", predict)


def masked_motif_model(t0: int, t1: int) -> BuiltinModel:
    if not (0 <= t0 < t1):
        raise UnknownModelError(f"masked_motif needs 0 <= t0 < t1, got ({t0}, {t1})")

    def predict(window: np.ndarray) -> float:
        if t1 > window.shape[0]:
            raise UnknownModelError(
                f"masked_motif region [{t0}, {t1}) exceeds window length {window.shape[0]}"
            )
        return float(np.ascontiguousarray(window[t0:t1, 0]).mean())

    return BuiltinModel(f"masked_motif({t0},{t1})", predict)


def resolve_builtin(name: str, args: list[str]) -> BuiltinModel:
    """Build a catalog model from its locator pieces.

    Locator grammar (after the "builtin:" prefix):
      last_value | mean | seasonal_naive:P | masked_motif:T0:T1 | linear:PATH
    where PATH points at a JSON file {"coefficients": [[...]], "bias": 0.0}.
    """
    try:
        if name == "last_value":
            return last_value_model()
        if name == "mean":
            return mean_model()
        if name == "seasonal_naive":
            return seasonal_naive_model(int(args[0]))
        if name == "masked_motif":
            return masked_motif_model(int(args[0]), int(args[1]))
        if name == "linear":
            with open(args[0]) as fh:
                spec = json.load(fh)
            return linear_model(spec["coefficients"], float(spec.get("bias", 0.0)))
    except UnknownModelError:
        raise
    except (IndexError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        raise UnknownModelError(f"bad arguments for builtin {name!r}: {exc}") from exc
    raise UnknownModelError(
        f"unknown builtin model {name!r}, expected one of: "
        + ", ".join(builtin_catalog())
    )
