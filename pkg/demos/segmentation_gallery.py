"""Gallery: all six segmentation algorithms on one synthetic window.

Builds a two-feature window (a smooth daily cycle and a spiky companion),
runs every segmenter, prints the per-feature segment layout, and writes a
comparison SVG with red stripes at the segment splits.

Run:  python3 demos/segmentation_gallery.py [out_dir]
"""

import sys
from pathlib import Path

import numpy as np

from seglime import ALGORITHMS, SegmenterConfig, segment, validate_sample
from seglime.svg import render_segment_strips


def build_window(T=48, seed=7):
    rng = np.random.default_rng(seed)
    t = np.arange(T)
    cycle = 2.0 + np.sin(2 * np.pi * t / 24) + 0.05 * rng.standard_normal(T)
    spiky = np.where((t > 18) & (t < 24), 5.0, 1.0) + 0.1 * rng.standard_normal(T)
    return np.column_stack([cycle, spiky])


def segment_layout(seg, feature):
    column = seg.labels[:, feature]
    runs = []
    start = 0
    for t in range(1, len(column) + 1):
        if t == len(column) or column[t] != column[t - 1]:
            runs.append(f"[{start}..{t})")
            start = t
    return " ".join(runs)


def main(out_dir="demo-output"):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    window = validate_sample(build_window())

    print(f"window shape: {window.shape[0]} timesteps x {window.shape[1]} features\n")
    maps = []
    for algo in ALGORITHMS:
        seg = segment(window, SegmenterConfig(algorithm=algo, k=6))
        maps.append((algo, seg))
        print(f"{algo} ({seg.num_segments} segments)")
        for f in range(window.num_features):
            print(f"  feature {f}: {segment_layout(seg, f)}")
        print()

    svg_path = out / "segmentation_gallery.svg"
    svg_path.write_text(render_segment_strips(window.values, maps, ["cycle", "spiky"]))
    print(f"comparison figure -> {svg_path}")


if __name__ == "__main__":
    main(*sys.argv[1:])
