"""Uniform prediction boundary around black-box forecasters.

Three adapter flavors share one contract: predict_batch takes windows of
one common (T, F) shape and returns one finite float per window, in order.

* BuiltinAdapter wraps an in-process callable (see models.py).
* ProcessAdapter talks line-delimited JSON to a child process on
  stdin/stdout: it spawns once, keeps the child alive across batches, and
  restarts it a single time if it dies mid-request.
* HttpAdapter POSTs the same JSON body to a /predict endpoint.

Wire protocol (process and HTTP alike):
  request:  {"id": <uint64>, "windows": [[[f0, ..., fF-1] x T] x B]}
  response: {"id": <uint64>, "predictions": [B doubles]}
            or {"id": ..., "error": "<message>"}
The id is echoed verbatim; floats ride as JSON numbers at full double
precision (shortest round-trip formatting), so adapters are bit-exact.
"""

from __future__ import annotations

import json
import os
import select
import shlex
import subprocess
import threading
import time
import urllib.error
import urllib.request

import numpy as np

from .errors import PredictionFailureError, ShapeMismatchError, UnknownModelError
from .models import BuiltinModel, resolve_builtin

DEFAULT_TIMEOUT = 60.0


def _as_batch(windows) -> np.ndarray:
    batch = np.asarray(windows, dtype=float)
    if batch.ndim == 2:
        batch = batch[None, :, :]
    if batch.ndim != 3:
        raise ShapeMismatchError(f"expected a (B, T, F) batch, got shape {batch.shape}")
    return batch


def _check_predictions(preds, expected: int, source: str) -> np.ndarray:
    arr = np.asarray(preds, dtype=float).ravel()
    if len(arr) != expected:
        raise PredictionFailureError(
            f"{source} returned {len(arr)} predictions for {expected} windows"
        )
    if not np.isfinite(arr).all():
        raise PredictionFailureError(f"{source} returned a non-finite prediction")
    return arr


class ModelAdapter:
    """Base contract; subclasses fill in _predict."""

    name: str = "adapter"
    max_in_flight: int = 1

    def predict_batch(self, windows) -> np.ndarray:
        batch = _as_batch(windows)
        return _check_predictions(self._predict(batch), len(batch), self.name)

    def _predict(self, batch: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def close(self) -> None:
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


class BuiltinAdapter(ModelAdapter):
    """In-process model; safe for any number of concurrent callers."""

    max_in_flight = 64

    def __init__(self, model: BuiltinModel):
        self.model = model
        self.name = f"builtin:{model.name}"

    def _predict(self, batch: np.ndarray) -> np.ndarray:
        predict = self.model.predict_window
        return np.array([predict(window) for window in batch], dtype=float)


def _request_payload(request_id: int, batch: np.ndarray) -> bytes:
    body = json.dumps({"id": request_id, "windows": batch.tolist()})
    return body.encode("utf-8")


def _parse_response(line: str, request_id: int, expected: int, source: str) -> np.ndarray:
    try:
        reply = json.loads(line)
    except json.JSONDecodeError as exc:
        raise PredictionFailureError(f"{source} sent malformed JSON", str(exc)) from exc
    if reply.get("id") != request_id:
        raise PredictionFailureError(
            f"{source} echoed id {reply.get('id')!r} for request {request_id}"
        )
    if "error" in reply:
        raise PredictionFailureError(f"{source} reported an error", reply["error"])
    if "predictions" not in reply:
        raise PredictionFailureError(f"{source} response carries no predictions")
    return _check_predictions(reply["predictions"], expected, source)


class ProcessAdapter(ModelAdapter):
    """Child process speaking one JSON object per line on stdin/stdout."""

    max_in_flight = 1

    def __init__(self, command, timeout: float = DEFAULT_TIMEOUT, env: dict | None = None):
        self.command = shlex.split(command) if isinstance(command, str) else list(command)
        self.timeout = timeout
        self.env = env
        self.name = f"process:{' '.join(self.command)}"
        self._proc: subprocess.Popen | None = None
        self._buffer = b""
        self._next_id = 0
        self._lock = threading.Lock()

    def _spawn(self) -> None:
        self._proc = subprocess.Popen(
            self.command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            env=self.env,
        )
        self._buffer = b""

    def _shutdown(self) -> None:
        if self._proc is not None:
            try:
                self._proc.kill()
            except OSError:
                pass
            self._proc.wait()
            self._proc = None

    def close(self) -> None:
        with self._lock:
            self._shutdown()

    def _read_line(self, deadline: float) -> str:
        fd = self._proc.stdout.fileno()
        while b"\n" not in self._buffer:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise TimeoutError("timed out waiting for response line")
            ready, _, _ = select.select([fd], [], [], remaining)
            if not ready:
                raise TimeoutError("timed out waiting for response line")
            chunk = os.read(fd, 65536)
            if not chunk:
                raise BrokenPipeError("child closed stdout")
            self._buffer += chunk
        line, self._buffer = self._buffer.split(b"\n", 1)
        return line.decode("utf-8")

    def _round_trip(self, request_id: int, payload: bytes) -> str:
        if self._proc is None or self._proc.poll() is not None:
            self._spawn()
        self._proc.stdin.write(payload + b"\n")
        self._proc.stdin.flush()
        return self._read_line(time.monotonic() + self.timeout)

    def _predict(self, batch: np.ndarray) -> np.ndarray:
        with self._lock:
            request_id = self._next_id
            self._next_id += 1
            payload = _request_payload(request_id, batch)
            try:
                line = self._round_trip(request_id, payload)
            except (BrokenPipeError, OSError, TimeoutError) as first:
                # one restart, then give up
                self._shutdown()
                try:
                    line = self._round_trip(request_id, payload)
                except (BrokenPipeError, OSError, TimeoutError) as second:
                    self._shutdown()
                    raise PredictionFailureError(
                        f"{self.name} failed twice", f"{first}; then {second}"
                    ) from second
            return _parse_response(line, request_id, len(batch), self.name)


class HttpAdapter(ModelAdapter):
    """POST /predict with the shared JSON body."""

    def __init__(self, url: str, timeout: float = DEFAULT_TIMEOUT, max_in_flight: int = 4):
        self.url = url
        self.timeout = timeout
        self.max_in_flight = max_in_flight
        self.name = f"http:{url}"
        self._sem = threading.Semaphore(max_in_flight)
        self._next_id = 0
        self._id_lock = threading.Lock()

    def _predict(self, batch: np.ndarray) -> np.ndarray:
        with self._id_lock:
            request_id = self._next_id
            self._next_id += 1
        request = urllib.request.Request(
            self.url,
            data=_request_payload(request_id, batch),
            headers={"Content-Type": "application/json"},
            method="POST",
        )
        with self._sem:
            try:
                with urllib.request.urlopen(request, timeout=self.timeout) as response:
                    line = response.read().decode("utf-8")
            except (urllib.error.URLError, OSError, TimeoutError) as exc:
                raise PredictionFailureError(f"{self.name} request failed", str(exc)) from exc
        return _parse_response(line, request_id, len(batch), self.name)


def parse_model_locator(locator: str, timeout: float = DEFAULT_TIMEOUT) -> ModelAdapter:
    """Build an adapter from "builtin:...", "process:...", or "http:...".

    HTTP locators keep their scheme: "http:https://host/predict" and the
    shorthand "http://host/predict" both work.
    """
    if locator.startswith("builtin:"):
        name, *args = locator[len("builtin:") :].split(":")
        return BuiltinAdapter(resolve_builtin(name, args))
    if locator.startswith("process:"):
        return ProcessAdapter(locator[len("process:") :], timeout=timeout)
    if locator.startswith(("http://", "https://")):
        return HttpAdapter(locator, timeout=timeout)
    if locator.startswith("http:"):
        return HttpAdapter(locator[len("http:") :], timeout=timeout)
    raise UnknownModelError(
        f"cannot parse model locator {locator!r}; expected builtin:, process:, or http:"
    )
