"""Command-line entry point.

Subcommands:
  segment    cut a CSV window into segments with one algorithm (or all six)
  explain    attribute one CSV window against a black-box model
  evaluate   run the perturbation-analysis fidelity harness over a dataset
  demo       synthesize a dataset and run the whole pipeline end to end

Every run writes its outputs plus a manifest.json (resolved parameters,
seeds, input digests, tool version) into --out. Exit codes: 0 ok, 2 bad
input, 3 model failure, 4 internal error.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .adapters import parse_model_locator
from .dataio import (
    SCHEMA_VERSION,
    attribution_payload,
    dump_json,
    manifest_payload,
    read_csv,
    segment_map_payload,
    sha256_file,
    write_csv,
)
from .errors import InputError, ModelError, SeglimeError
from .evaluation import EvalConfig, run_perturbation_analysis
from .explainer import ExplainConfig, explain
from .models import masked_motif_model
from .adapters import BuiltinAdapter
from .replacement import KINDS
from .segmentation import ALGORITHMS, SLOPE_VARIANTS, SegmenterConfig, segment
from .svg import render_attribution_strips, render_segment_strips
from .types import Dataset, validate_sample

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_MODEL = 3
EXIT_INTERNAL = 4


def _cli_algo(name: str) -> str:
    return name.replace("-", "_")


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "-", text).strip("-")


def _segmenter_config(args, algorithm: str) -> SegmenterConfig:
    return SegmenterConfig(
        algorithm=algorithm,
        m=args.window_size,
        k=args.partitions,
        slope_variant=args.slope_variant,
    )


def _write_manifest(out_dir: Path, command: str, parameters: dict, seeds: dict, inputs: dict, outputs: list):
    digests = {label: sha256_file(p) for label, p in inputs.items()}
    payload = manifest_payload(command, parameters, seeds, digests, outputs, __version__)
    dump_json(out_dir / "manifest.json", payload)


def cmd_segment(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    data = read_csv(args.input)
    sample = validate_sample(data.values)
    algorithms = list(ALGORITHMS) if args.algo == "all" else [_cli_algo(args.algo)]

    outputs = []
    maps = []
    for algo in algorithms:
        seg = segment(sample, _segmenter_config(args, algo))
        maps.append((algo, seg))
        name = f"segments_{algo}.json"
        dump_json(out_dir / name, segment_map_payload(algo, seg))
        outputs.append(name)
        if args.svg:
            svg_name = f"segments_{algo}.svg"
            strip = render_segment_strips(sample.values, [(algo, seg)], data.feature_names,
                                          data.timestamps)
            (out_dir / svg_name).write_text(strip)
            outputs.append(svg_name)
    if args.algo == "all":
        comparison = render_segment_strips(sample.values, maps, data.feature_names,
                                           data.timestamps)
        (out_dir / "segments_comparison.svg").write_text(comparison)
        outputs.append("segments_comparison.svg")

    _write_manifest(
        out_dir,
        "segment",
        {
            "input": str(args.input),
            "algo": args.algo,
            "window_size": args.window_size,
            "partitions": args.partitions,
            "slope_variant": args.slope_variant,
            "svg": bool(args.svg),
        },
        {},
        {str(args.input): args.input},
        outputs,
    )
    return EXIT_OK


def cmd_explain(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    data = read_csv(args.input)
    sample = validate_sample(data.values)
    algo = _cli_algo(args.algo)
    segmenter = _segmenter_config(args, algo)
    config = ExplainConfig(
        num_masks=args.masks,
        rng_seed=args.seed,
        replacement=args.replacement,
    )
    with parse_model_locator(args.model, timeout=args.timeout) as adapter:
        attr = explain(sample, segmenter, adapter, config)
    seg = segment(sample, segmenter)

    outputs = ["attribution.json"]
    dump_json(out_dir / "attribution.json", attribution_payload(attr, seg))
    if args.svg:
        strip = render_attribution_strips(sample.values, attr.weights, data.feature_names,
                                          data.timestamps)
        (out_dir / "attribution.svg").write_text(strip)
        outputs.append("attribution.svg")

    _write_manifest(
        out_dir,
        "explain",
        {
            "input": str(args.input),
            "model": args.model,
            "algo": algo,
            "window_size": args.window_size,
            "partitions": args.partitions,
            "slope_variant": args.slope_variant,
            "replacement": args.replacement,
            "masks": args.masks,
            "svg": bool(args.svg),
        },
        {"rng_seed": args.seed},
        {str(args.input): args.input},
        outputs,
    )
    return EXIT_OK


def _report_cells(report) -> dict:
    return {
        "mse_pert": report.mse_pert,
        "mse_rand": report.mse_rand,
        "pert_c": report.pert_c,
        "rand_c": report.rand_c,
        "score": report.score,
        "degenerate_count": report.degenerate_count,
    }


def _format_table(replacement: str, percentile: float, locators: list, rows: dict) -> str:
    """Aligned text table: one segmenter per row, one model per column."""
    name_width = max(len("segmenter"), *(len(a) for a in rows))
    col_widths = [max(len(loc), 8) for loc in locators]
    lines = [f"fidelity score = |pert_c| / |rand_c|   replacement={replacement}   percentile={percentile:g}"]
    header = "segmenter".ljust(name_width) + "".join(
        "  " + loc.rjust(w) for loc, w in zip(locators, col_widths)
    )
    lines.append(header)
    lines.append("-" * len(header))
    for algo, scores in rows.items():
        cells = []
        for loc, w in zip(locators, col_widths):
            score = scores[loc]
            cells.append(("undef" if score is None else f"{score:.2f}").rjust(w))
        lines.append(algo.ljust(name_width) + "".join("  " + c for c in cells))
    return "\n".join(lines) + "\n"


def cmd_evaluate(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    data = read_csv(args.input)
    dataset = Dataset(
        series=data.values,
        window_length=args.window_length,
        feature_names=data.feature_names,
    )
    locators = [loc for part in args.model for loc in part.split(",") if loc]
    algorithms = (
        list(ALGORITHMS)
        if args.algos == "all"
        else [_cli_algo(a) for a in args.algos.split(",") if a]
    )
    replacements = [r for r in args.replacements.split(",") if r]

    outputs = []
    tables = []
    for replacement in replacements:
        scores = {algo: {} for algo in algorithms}
        for locator in locators:
            per_algo = {}
            mse_orig = None
            with parse_model_locator(locator, timeout=args.timeout) as adapter:
                for algo in algorithms:
                    config = EvalConfig(
                        segmenter=_segmenter_config(args, algo),
                        explain=ExplainConfig(num_masks=args.masks, rng_seed=args.seed),
                        percentile=args.percentile,
                        replacement=replacement,
                        rng_seed=args.seed,
                        random_repeats=args.random_repeats,
                    )
                    report = run_perturbation_analysis(dataset, adapter, config, workers=args.workers)
                    per_algo[algo] = _report_cells(report)
                    scores[algo][locator] = report.score
                    mse_orig = report.mse_orig
            name = f"eval_{_slug(locator)}_{replacement}.json"
            dump_json(
                out_dir / name,
                {
                    "schema_version": SCHEMA_VERSION,
                    "config": {
                        "model": locator,
                        "replacement": replacement,
                        "percentile": args.percentile,
                        "window_length": args.window_length,
                        "masks": args.masks,
                        "random_repeats": args.random_repeats,
                        "window_size": args.window_size,
                        "partitions": args.partitions,
                        "slope_variant": args.slope_variant,
                        "seed": args.seed,
                    },
                    "mse_orig": mse_orig,
                    "per_algo": per_algo,
                },
            )
            outputs.append(name)
        tables.append(_format_table(replacement, args.percentile, locators, scores))

    (out_dir / "scores_table.txt").write_text("\n".join(tables))
    outputs.append("scores_table.txt")
    _write_manifest(
        out_dir,
        "evaluate",
        {
            "input": str(args.input),
            "models": locators,
            "window_length": args.window_length,
            "algos": algorithms,
            "replacements": replacements,
            "percentile": args.percentile,
            "masks": args.masks,
            "random_repeats": args.random_repeats,
            "window_size": args.window_size,
            "partitions": args.partitions,
            "slope_variant": args.slope_variant,
            "workers": args.workers,
        },
        {"rng_seed": args.seed},
        {str(args.input): args.input},
        outputs,
    )
    return EXIT_OK


def synthesize_demo_series(n: int, seed: int) -> np.ndarray:
    """Two features: a daily-looking cycle plus drift, and a noisy echo."""
    rng = np.random.default_rng(seed)
    t = np.arange(n)
    base = 2.0 + 0.8 * np.sin(2 * np.pi * t / 24) + 0.05 * rng.standard_normal(n)
    echo = 1.5 + 0.5 * np.cos(2 * np.pi * t / 24) + 0.1 * rng.standard_normal(n)
    return np.column_stack([base, echo])


def cmd_demo(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    series = synthesize_demo_series(124, args.seed)
    csv_path = out_dir / "demo_dataset.csv"
    write_csv(csv_path, series, ["load", "echo"])

    window = validate_sample(series[:24])
    maps = []
    for algo in ALGORITHMS:
        seg = segment(window, SegmenterConfig(algorithm=algo))
        maps.append((algo, seg))
        dump_json(out_dir / f"segments_{algo}.json", segment_map_payload(algo, seg))
    (out_dir / "segments_comparison.svg").write_text(
        render_segment_strips(window.values, maps, ["load", "echo"])
    )

    adapter = BuiltinAdapter(masked_motif_model(10, 15))
    config = ExplainConfig(num_masks=400, rng_seed=args.seed)
    attr = explain(window, SegmenterConfig(algorithm="uniform"), adapter, config)
    seg = segment(window, SegmenterConfig(algorithm="uniform"))
    dump_json(out_dir / "attribution.json", attribution_payload(attr, seg))
    (out_dir / "attribution.svg").write_text(
        render_attribution_strips(window.values, attr.weights, ["load", "echo"])
    )

    dataset = Dataset(series=series, window_length=24, feature_names=("load", "echo"))
    per_algo = {}
    mse_orig = None
    for algo in ALGORITHMS:
        report = run_perturbation_analysis(
            dataset,
            adapter,
            EvalConfig(
                segmenter=SegmenterConfig(algorithm=algo),
                explain=ExplainConfig(num_masks=400, rng_seed=args.seed),
                rng_seed=args.seed,
            ),
        )
        per_algo[algo] = _report_cells(report)
        mse_orig = report.mse_orig
    dump_json(
        out_dir / "eval_demo.json",
        {
            "schema_version": SCHEMA_VERSION,
            "config": {"model": "builtin:masked_motif:10:15", "replacement": "zero",
                       "percentile": 90.0, "window_length": 24, "masks": 400,
                       "seed": args.seed},
            "mse_orig": mse_orig,
            "per_algo": per_algo,
        },
    )
    scores = {algo: {"builtin:masked_motif:10:15": per_algo[algo]["score"]} for algo in ALGORITHMS}
    (out_dir / "scores_table.txt").write_text(
        _format_table("zero", 90.0, ["builtin:masked_motif:10:15"], scores)
    )

    outputs = sorted(p.name for p in out_dir.iterdir() if p.name != "manifest.json")
    _write_manifest(out_dir, "demo", {"seed": args.seed}, {"rng_seed": args.seed}, {"demo_dataset.csv": csv_path}, outputs)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seglime",
        description="Segment-based local explanations for black-box time series forecasters.",
    )
    parser.add_argument("--version", action="version", version=f"seglime {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    algo_choices = [a.replace("_", "-") for a in ALGORITHMS] + list(ALGORITHMS) + ["all"]

    def add_segmenter_flags(p):
        p.add_argument("--algo", default="uniform", choices=sorted(set(algo_choices)))
        p.add_argument("--window-size", type=int, default=None,
                       help="uniform window size / matrix-profile subsequence length (default T//8)")
        p.add_argument("--partitions", type=int, default=8,
                       help="partition count for slopes / bins / sax")
        p.add_argument("--slope-variant", default="gradient", choices=SLOPE_VARIANTS)

    p_segment = sub.add_parser("segment", help="segment one CSV window")
    p_segment.add_argument("input")
    add_segmenter_flags(p_segment)
    p_segment.add_argument("--svg", action="store_true", help="render per-algorithm strips")
    p_segment.add_argument("--out", default="seglime-out")
    p_segment.set_defaults(func=cmd_segment)

    p_explain = sub.add_parser("explain", help="attribute one CSV window")
    p_explain.add_argument("input")
    p_explain.add_argument("--model", required=True,
                           help="builtin:name[:args] | process:cmd | http:url")
    add_segmenter_flags(p_explain)
    p_explain.add_argument("--replacement", default="zero", choices=KINDS)
    p_explain.add_argument("--masks", type=int, default=1000)
    p_explain.add_argument("--seed", type=int, default=0)
    p_explain.add_argument("--timeout", type=float, default=60.0)
    p_explain.add_argument("--svg", action="store_true")
    p_explain.add_argument("--out", default="seglime-out")
    p_explain.set_defaults(func=cmd_explain)

    p_eval = sub.add_parser("evaluate", help="perturbation-analysis fidelity run")
    p_eval.add_argument("input")
    p_eval.add_argument("--model", action="append", required=True,
                        help="model locator; repeat or comma-separate for columns")
    p_eval.add_argument("--window-length", type=int, default=24)
    p_eval.add_argument("--algos", default="all",
                        help="comma-separated algorithms or 'all'")
    p_eval.add_argument("--replacements", default="zero",
                        help="comma-separated replacement strategies")
    p_eval.add_argument("--percentile", type=float, default=90.0)
    p_eval.add_argument("--seed", type=int, default=0)
    p_eval.add_argument("--masks", type=int, default=1000)
    p_eval.add_argument("--random-repeats", type=int, default=5)
    p_eval.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p_eval.add_argument("--timeout", type=float, default=60.0)
    p_eval.add_argument("--window-size", type=int, default=None)
    p_eval.add_argument("--partitions", type=int, default=8)
    p_eval.add_argument("--slope-variant", default="gradient", choices=SLOPE_VARIANTS)
    p_eval.add_argument("--out", default="seglime-out")
    p_eval.set_defaults(func=cmd_evaluate)

    p_demo = sub.add_parser("demo", help="synthetic end-to-end run")
    p_demo.add_argument("--seed", type=int, default=0)
    p_demo.add_argument("--out", default="seglime-demo")
    p_demo.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"seglime: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ModelError as exc:
        print(f"seglime: model error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except SeglimeError as exc:
        print(f"seglime: error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # pragma: no cover - safety net
        print(f"seglime: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
