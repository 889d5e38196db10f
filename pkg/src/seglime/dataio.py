"""CSV and JSON serialization plus run manifests.

CSV layout: a header row of feature names, one row per timestep. An
optional leading timestamp-like column (named "timestamp", "time", "date",
or "datetime") is carried through untouched but ignored numerically.
Floats are written with repr(), i.e. shortest round-trip formatting, so a
write-then-read is lossless at full double precision.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CsvParseError

SCHEMA_VERSION = 1
TIMESTAMP_NAMES = {"timestamp", "time", "date", "datetime"}


@dataclass(frozen=True)
class CsvData:
    values: np.ndarray
    feature_names: tuple[str, ...]
    timestamps: tuple[str, ...] | None = None


def read_csv(path) -> CsvData:
    path = Path(path)
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise CsvParseError(f"cannot read {path}: {exc}") from exc
    rows = [row for row in rows if row]
    if len(rows) < 2:
        raise CsvParseError(f"{path} needs a header row and at least one data row")
    header = [c.strip() for c in rows[0]]
    has_timestamp = bool(header) and header[0].lower() in TIMESTAMP_NAMES
    first_feature = 1 if has_timestamp else 0
    feature_names = tuple(header[first_feature:])
    if not feature_names:
        raise CsvParseError(f"{path} has no feature columns")

    timestamps = [] if has_timestamp else None
    values = []
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise CsvParseError(
                f"expected {len(header)} columns, got {len(row)}", row=r
            )
        if has_timestamp:
            timestamps.append(row[0])
        parsed = []
        for c, cell in enumerate(row[first_feature:], start=first_feature + 1):
            try:
                parsed.append(float(cell))
            except ValueError:
                raise CsvParseError(f"cannot parse {cell!r} as a number", row=r, column=c)
        values.append(parsed)
    return CsvData(
        values=np.array(values, dtype=float),
        feature_names=feature_names,
        timestamps=tuple(timestamps) if timestamps is not None else None,
    )


def write_csv(path, values, feature_names, timestamps=None) -> None:
    values = np.asarray(values, dtype=float)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if timestamps is not None:
            writer.writerow(["timestamp", *feature_names])
            for ts, row in zip(timestamps, values):
                writer.writerow([ts, *[repr(float(v)) for v in row]])
        else:
            writer.writerow(list(feature_names))
            for row in values:
                writer.writerow([repr(float(v)) for v in row])


def dump_json(path, payload) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


def segment_map_payload(algorithm: str, seg) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "algorithm": algorithm,
        "shape": list(seg.labels.shape),
        "num_segments": seg.num_segments,
        "labels": seg.labels.tolist(),
    }


def attribution_payload(attr, seg) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "shape": list(attr.weights.shape),
        "labels": seg.labels.tolist(),
        "segment_coefficients": attr.segment_coefficients.tolist(),
        "intercept": attr.intercept,
        "weights": attr.weights.tolist(),
    }


def manifest_payload(command: str, parameters: dict, seeds: dict, inputs: dict, outputs: list, version: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": version,
        "command": command,
        "parameters": parameters,
        "seeds": seeds,
        "inputs": inputs,
        "outputs": sorted(outputs),
    }
