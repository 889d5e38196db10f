"""Reference forecast server: stdio and HTTP transports for the prediction
wire protocol, wrapping pluggable stateless forecasting callables."""

__version__ = "0.1.0"

from .models import available_models, register_model, resolve_model
from .server import handle_request, serve_http, serve_stdio

__all__ = [
    "available_models",
    "handle_request",
    "register_model",
    "resolve_model",
    "serve_http",
    "serve_stdio",
]
