"""The two transports for the forecast wire protocol.

One request, one response, both single JSON objects:

  request:  {"id": <uint64>, "windows": [[[f0, ..., fF-1] x T] x B]}
  response: {"id": <uint64>, "predictions": [B doubles]}
            {"id": <uint64 or null>, "error": "<message>"}

The id is echoed verbatim. Predictions are emitted in window order with
full double precision (json's shortest round-trip float formatting). A
malformed request produces an error response and the server keeps going.

stdio mode reads one request per line from stdin and answers on stdout,
strictly serially. HTTP mode answers POST /predict and handles concurrent
requests independently (one thread per connection).
"""

from __future__ import annotations

import json
import sys
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import numpy as np


def handle_request(request, model) -> dict:
    """Apply the model to every window; any failure becomes an error reply."""
    request_id = request.get("id") if isinstance(request, dict) else None
    try:
        if not isinstance(request, dict):
            raise ValueError("request must be a JSON object")
        if "windows" not in request:
            raise ValueError("request carries no 'windows'")
        batch = np.asarray(request["windows"], dtype=float)
        if batch.ndim != 3:
            raise ValueError(f"'windows' must be a B x T x F array, got shape {batch.shape}")
        predictions = [float(model(window)) for window in batch]
        return {"id": request_id, "predictions": predictions}
    except Exception as exc:  # noqa: BLE001 - protocol: report and stay alive
        return {"id": request_id, "error": str(exc)}


def serve_stdio(model, stdin=None, stdout=None) -> None:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
        except json.JSONDecodeError as exc:
            reply = {"id": None, "error": f"malformed JSON: {exc}"}
        else:
            reply = handle_request(request, model)
        stdout.write(json.dumps(reply) + "\n")
        stdout.flush()


class _PredictHandler(BaseHTTPRequestHandler):
    def do_POST(self):
        if self.path.rstrip("/") != "/predict":
            self.send_error(404, "unknown path; POST /predict")
            return
        length = int(self.headers.get("Content-Length", 0))
        raw = self.rfile.read(length)
        try:
            request = json.loads(raw)
        except json.JSONDecodeError as exc:
            reply = {"id": None, "error": f"malformed JSON: {exc}"}
        else:
            reply = handle_request(request, self.server.model)
        body = json.dumps(reply).encode("utf-8")
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):  # quiet; the protocol lives in the bodies
        pass


def serve_http(model, host: str = "127.0.0.1", port: int = 8765) -> None:
    server = ThreadingHTTPServer((host, port), _PredictHandler)
    server.model = model
    # announce the bound port (useful with --port 0) before blocking
    print(json.dumps({"ready": True, "host": host, "port": server.server_address[1]}), flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
