"""Forecasting callables served over the wire protocol.

Each model maps one (T, F) float window to a single float. The built-ins
mirror the `seglime` in-process test models expression for expression
(contiguous 1-D reductions), so a round trip through the server returns
bit-identical doubles — they exist as exact oracles for cross-adapter
equivalence tests.

Mounting a real model
---------------------
Register any stateless callable; see `deep_model_stub` for the shape of
the hook. Something like:

    import model_server.models as models

    net = load_my_trained_network("weights.pt")

    def my_model(window):                 # window: np.ndarray (T, F)
        return float(net(window[None]))   # one float out

    models.register_model("my_model", lambda args: my_model)

and then serve it with `--model my_model`.
"""

from __future__ import annotations

import json

import numpy as np


def last_value(window: np.ndarray) -> float:
    return float(window[-1, 0])


def mean(window: np.ndarray) -> float:
    return float(np.ascontiguousarray(window[:, 0]).mean())


def make_linear(coefficients, bias: float = 0.0):
    coeffs = np.asarray(coefficients, dtype=float)

    def linear(window: np.ndarray) -> float:
        if window.shape != coeffs.shape:
            raise ValueError(f"linear model expects shape {coeffs.shape}, got {window.shape}")
        return float(np.ascontiguousarray(coeffs * window).sum() + bias)

    return linear


def deep_model_stub(window: np.ndarray) -> float:
    raise NotImplementedError(
        "mount a trained model here: load it once at startup and return "
        "one float per (T, F) window; see the module docstring"
    )


def _linear_factory(args):
    if not args:
        raise ValueError("linear needs a JSON config path: --model linear --coefficients FILE")
    with open(args[0]) as fh:
        spec = json.load(fh)
    return make_linear(spec["coefficients"], float(spec.get("bias", 0.0)))


_REGISTRY = {
    "last_value": lambda args: last_value,
    "mean": lambda args: mean,
    "linear": _linear_factory,
    "deep_stub": lambda args: deep_model_stub,
}


def register_model(name: str, factory) -> None:
    """Add a model factory: factory(args: list[str]) -> callable(window)."""
    _REGISTRY[name] = factory


def available_models() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def resolve_model(name: str, args: list[str]):
    if name not in _REGISTRY:
        raise ValueError(f"unknown model {name!r}; available: {', '.join(available_models())}")
    return _REGISTRY[name](args)
