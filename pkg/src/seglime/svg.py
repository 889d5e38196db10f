"""Static SVG strips: segmentation comparisons and attribution heat maps.

Hand-rolled SVG with fixed-precision coordinates, so identical inputs
produce byte-identical files. One horizontal strip per (feature,
segmentation) pair; red vertical stripes mark segment splits. Attribution
strips shade each cell by signed relevance (red = pushes the forecast up,
blue = down) behind the series line.
"""

from __future__ import annotations

import numpy as np

STRIP_WIDTH = 720
STRIP_HEIGHT = 64
MARGIN = 14
LABEL_HEIGHT = 18


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _scale_series(column: np.ndarray, x0: float, y0: float, width: float, height: float) -> str:
    lo = float(column.min())
    hi = float(column.max())
    span = hi - lo if hi > lo else 1.0
    n = len(column)
    points = []
    for t, v in enumerate(column):
        x = x0 + width * (t / max(1, n - 1))
        y = y0 + height * (1.0 - (float(v) - lo) / span)
        points.append(f"{_fmt(x)},{_fmt(y)}")
    return " ".join(points)


def _column_borders(labels_column: np.ndarray) -> list[int]:
    return [int(t) for t in np.flatnonzero(np.diff(labels_column) != 0) + 1]


def _strip(parts: list[str], column: np.ndarray, borders: list[int], x0, y0, title: str):
    T = len(column)
    parts.append(
        f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{STRIP_WIDTH}" height="{STRIP_HEIGHT}" '
        'fill="#f7f7f7" stroke="#cccccc" stroke-width="1"/>'
    )
    for b in borders:
        x = x0 + STRIP_WIDTH * (b - 0.5) / max(1, T - 1)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(y0)}" x2="{_fmt(x)}" y2="{_fmt(y0 + STRIP_HEIGHT)}" '
            'stroke="#d62728" stroke-width="2"/>'
        )
    points = _scale_series(column, x0, y0 + 6, STRIP_WIDTH, STRIP_HEIGHT - 12)
    parts.append(f'<polyline points="{points}" fill="none" stroke="#1f3d7a" stroke-width="1.5"/>')
    parts.append(
        f'<text x="{_fmt(x0)}" y="{_fmt(y0 - 4)}" font-family="monospace" font-size="12" '
        f'fill="#333333">{title}</text>'
    )


def _axis_labels(parts: list[str], timestamps, x0, y):
    if not timestamps:
        return
    first, last = str(timestamps[0]), str(timestamps[-1])
    parts.append(
        f'<text x="{_fmt(x0)}" y="{_fmt(y)}" font-family="monospace" font-size="10" '
        f'fill="#666666">{first}</text>'
    )
    parts.append(
        f'<text x="{_fmt(x0 + STRIP_WIDTH)}" y="{_fmt(y)}" text-anchor="end" '
        f'font-family="monospace" font-size="10" fill="#666666">{last}</text>'
    )


def render_segment_strips(values: np.ndarray, named_maps, feature_names=None,
                          timestamps=None) -> str:
    """Comparison figure: one strip per (feature, segmentation algorithm)."""
    values = np.asarray(values, dtype=float)
    T, F = values.shape
    if feature_names is None:
        feature_names = [f"f{f}" for f in range(F)]
    named_maps = list(named_maps)
    rows = F * len(named_maps)
    height = MARGIN + rows * (STRIP_HEIGHT + LABEL_HEIGHT + 8) + MARGIN
    width = STRIP_WIDTH + 2 * MARGIN
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="#ffffff"/>',
    ]
    y = MARGIN + LABEL_HEIGHT
    for f in range(F):
        for name, seg in named_maps:
            borders = _column_borders(seg.labels[:, f])
            _strip(parts, values[:, f], borders, MARGIN, y, f"{feature_names[f]} | {name}")
            _axis_labels(parts, timestamps, MARGIN, y + STRIP_HEIGHT + 11)
            y += STRIP_HEIGHT + LABEL_HEIGHT + 8
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_attribution_strips(values: np.ndarray, weights: np.ndarray, feature_names=None,
                              timestamps=None) -> str:
    """Heat strips: per-cell signed relevance behind each feature's line."""
    values = np.asarray(values, dtype=float)
    weights = np.asarray(weights, dtype=float)
    T, F = values.shape
    if feature_names is None:
        feature_names = [f"f{f}" for f in range(F)]
    peak = float(np.abs(weights).max())
    height = MARGIN + F * (STRIP_HEIGHT + LABEL_HEIGHT + 8) + MARGIN
    width = STRIP_WIDTH + 2 * MARGIN
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="#ffffff"/>',
    ]
    y = MARGIN + LABEL_HEIGHT
    cell_w = STRIP_WIDTH / T
    for f in range(F):
        for t in range(T):
            w = float(weights[t, f])
            opacity = 0.0 if peak == 0 else abs(w) / peak
            color = "#d62728" if w >= 0 else "#1f77b4"
            parts.append(
                f'<rect x="{_fmt(MARGIN + t * cell_w)}" y="{_fmt(y)}" '
                f'width="{_fmt(cell_w)}" height="{STRIP_HEIGHT}" fill="{color}" '
                f'fill-opacity="{opacity:.4f}"/>'
            )
        parts.append(
            f'<rect x="{MARGIN}" y="{_fmt(y)}" width="{STRIP_WIDTH}" height="{STRIP_HEIGHT}" '
            'fill="none" stroke="#cccccc" stroke-width="1"/>'
        )
        points = _scale_series(values[:, f], MARGIN, y + 6, STRIP_WIDTH, STRIP_HEIGHT - 12)
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="#222222" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{MARGIN}" y="{_fmt(y - 4)}" font-family="monospace" font-size="12" '
            f'fill="#333333">{feature_names[f]}</text>'
        )
        _axis_labels(parts, timestamps, MARGIN, y + STRIP_HEIGHT + 11)
        y += STRIP_HEIGHT + LABEL_HEIGHT + 8
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
