"""Acceptance suite: one test per release criterion, at pinned tolerances.

Each test prints a PASS line (visible with -s); the test names double as
the criterion list under plain `pytest -v`.
"""

import json
import time

import numpy as np
import pytest

from oracles import (
    brute_force_matrix_profile,
    linear_segment_contributions,
    sax_bscan,
)
from seglime.adapters import BuiltinAdapter
from seglime.cli import main
from seglime.dataio import write_csv
from seglime.evaluation import EvalConfig, run_perturbation_analysis
from seglime.explainer import ExplainConfig, explain
from seglime.matrix_profile import compute_matrix_profile
from seglime.models import linear_model, masked_motif_model
from seglime.replacement import perturb_cells
from seglime.segmentation import (
    ALGORITHMS,
    SegmenterConfig,
    sax_tolerance_band,
    sax_transform,
    segment,
    segment_sax,
)
from seglime.types import Dataset, validate_sample


def report(name, detail):
    print(f"ACCEPTANCE {name}: PASS ({detail})")


def test_criterion_matrix_profile_matches_brute_force_oracle():
    # 50 random series, n <= 300, m in {4, 8, 16}: per-entry agreement
    # within 1e-9, total runtime under 10 s
    start = time.monotonic()
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(60, 301))
        m = int(rng.choice([4, 8, 16]))
        series = rng.normal(size=n)
        got = compute_matrix_profile(series, m).distances
        want = brute_force_matrix_profile(series, m)
        worst = max(worst, float(np.abs(got - want).max()))
    elapsed = time.monotonic() - start
    assert worst <= 1e-9
    assert elapsed < 10.0
    report("matrix-profile-oracle", f"worst diff {worst:.2e}, {elapsed:.1f}s")


def test_criterion_segmentation_invariants_hold_on_random_inputs():
    # 1000 random (sample, config) pairs across all six algorithms; the
    # SegmentMap constructor enforces partition / contiguity / label
    # invariants, and sax must land inside its tolerance band whenever the
    # exhaustive bin-count scan says some bin count achieves it
    rng = np.random.default_rng(77)
    sax_checked = 0
    for trial in range(1000):
        algo = ALGORITHMS[trial % len(ALGORITHMS)]
        T = int(rng.integers(8, 41))
        F = int(rng.integers(1, 3))
        values = rng.normal(size=(T, F)) * rng.uniform(0.5, 5.0)
        if rng.random() < 0.5:
            values = np.cumsum(values, axis=0)  # smoother series half the time
        sample = validate_sample(values)
        k = int(rng.integers(2, max(3, min(T - 1, 9))))
        config = SegmenterConfig(algorithm=algo, k=k)
        seg = segment(sample, config)
        assert seg.labels.shape == (T, F)
        if algo == "sax":
            lower, upper = sax_tolerance_band(k)
            for f in range(F):
                achievable, _ = sax_bscan(values[:, f], k, T)
                if achievable:
                    count = len(np.unique(seg.labels[:, f]))
                    assert lower <= count <= upper
                    sax_checked += 1
    report("segmentation-invariants", f"1000 maps validated, {sax_checked} sax tolerance checks")


def test_criterion_three_band_symbol_pattern_collapses_to_four_segments():
    # symbol string 0,0,0,1,1,0,2,2,2 -> runs 000 | 11 | 0 | 222
    values = np.array([0.0, 0.2, 0.1, 5.0, 5.2, 0.3, 10.0, 9.8, 9.9])
    assert sax_transform(values, 3).tolist() == [0, 0, 0, 1, 1, 0, 2, 2, 2]
    seg = segment_sax(validate_sample(values.reshape(-1, 1)), 4)
    assert seg.num_segments == 4
    report("symbol-run-collapse", "4 segments")


def test_criterion_linear_recovery_within_five_percent():
    # random positive linear models, zero replacement, 1000 masks, ridge 1:
    # every segment coefficient within 5% of its closed-form contribution
    # in at least 95 of 100 trials, per segmenter, under 60 s
    start = time.monotonic()
    rng = np.random.default_rng(7)
    failures = {algo: 0 for algo in ALGORITHMS}
    trials = 100
    for trial in range(trials):
        x = rng.uniform(0.5, 1.5, size=(24, 2))
        c = rng.uniform(0.5, 1.5, size=(24, 2))
        sample = validate_sample(x)
        adapter = BuiltinAdapter(linear_model(c, bias=float(rng.uniform(-1, 1))))
        for algo in ALGORITHMS:
            segcfg = SegmenterConfig(algorithm=algo)
            attr = explain(
                sample, segcfg, adapter,
                ExplainConfig(num_masks=1000, ridge_strength=1.0,
                              replacement="zero", rng_seed=trial),
            )
            seg = segment(sample, segcfg)
            want = linear_segment_contributions(x, c, seg.labels, seg.num_segments)
            rel = np.abs(attr.segment_coefficients - want) / np.abs(want)
            if rel.max() > 0.05:
                failures[algo] += 1
    elapsed = time.monotonic() - start
    assert elapsed < 60.0
    for algo, count in failures.items():
        assert count <= trials * 0.05, f"{algo}: {count} of {trials} trials off"
    report("linear-recovery", f"failures {failures}, {elapsed:.1f}s")


def _motif_dataset():
    rng = np.random.default_rng(321)
    t = np.arange(224)
    series = 2.0 + 0.8 * np.sin(2 * np.pi * t / 24) + 0.1 * rng.standard_normal(224)
    return Dataset(series=series.reshape(-1, 1), window_length=24)


def test_criterion_fidelity_scores_beat_random_on_motif_model():
    # 200 synthetic windows, model depends only on the contiguous 5-cell
    # region [10, 15) of feature 0, zero replacement, percentile 90:
    # score > 1 for at least 5 of 6 segmenters, and the best segmenter's
    # mean score over 5 seeds >= 1.5, all under 5 minutes
    start = time.monotonic()
    dataset = _motif_dataset()
    assert dataset.num_windows == 200
    model = BuiltinAdapter(masked_motif_model(10, 15))

    scores = {algo: [] for algo in ALGORITHMS}
    for seed in range(5):
        for algo in ALGORITHMS:
            config = EvalConfig(
                segmenter=SegmenterConfig(algorithm=algo),
                explain=ExplainConfig(num_masks=1000, rng_seed=seed),
                percentile=90.0,
                replacement="zero",
                rng_seed=seed,
            )
            run = run_perturbation_analysis(dataset, model, config)
            scores[algo].append(run.score)
    elapsed = time.monotonic() - start

    first_seed = {algo: scores[algo][0] for algo in ALGORITHMS}
    above_one = sum(1 for s in first_seed.values() if s is not None and s > 1.0)
    assert above_one >= 5, f"only {above_one} segmenters beat random: {first_seed}"
    means = {
        algo: float(np.mean([s for s in runs if s is not None]))
        for algo, runs in scores.items()
    }
    best_algo = max(means, key=means.get)
    assert means[best_algo] >= 1.5, f"best mean {means[best_algo]:.2f} below 1.5"
    assert elapsed < 300.0
    report(
        "fidelity-sanity",
        f"{above_one}/6 above 1, best {best_algo} mean {means[best_algo]:.2f}, {elapsed:.0f}s",
    )


@pytest.fixture()
def determinism_csv(tmp_path):
    rng = np.random.default_rng(12)
    t = np.arange(54)
    values = 2.0 + 0.8 * np.sin(2 * np.pi * t / 24) + 0.1 * rng.standard_normal(54)
    path = tmp_path / "series.csv"
    write_csv(path, values.reshape(-1, 1), ["load"])
    return path


def test_criterion_cli_outputs_are_byte_identical_across_runs(determinism_csv, tmp_path):
    explain_args = ["explain", str(determinism_csv), "--model", "builtin:masked_motif:10:15",
                    "--algo", "slopes", "--partitions", "4", "--seed", "13"]
    out_a, out_b = tmp_path / "ea", tmp_path / "eb"
    assert main([*explain_args, "--out", str(out_a)]) == 0
    assert main([*explain_args, "--out", str(out_b)]) == 0
    attribution_a = (out_a / "attribution.json").read_bytes()
    assert attribution_a == (out_b / "attribution.json").read_bytes()
    json.loads(attribution_a)

    eval_args = ["evaluate", str(determinism_csv), "--model", "builtin:masked_motif:10:15",
                 "--window-length", "24", "--algos", "uniform,sax", "--masks", "200",
                 "--random-repeats", "2", "--seed", "13"]
    out_c, out_d = tmp_path / "ec", tmp_path / "ed"
    assert main([*eval_args, "--out", str(out_c)]) == 0
    assert main([*eval_args, "--out", str(out_d)]) == 0
    name = "eval_builtin-masked_motif-10-15_zero.json"
    eval_c = (out_c / name).read_bytes()
    assert eval_c == (out_d / name).read_bytes()
    json.loads(eval_c)
    report("cli-determinism", "explain and evaluate byte-identical")


def test_criterion_inverse_replacement_is_an_involution():
    # reflecting any deactivated-cell set twice about the original window's
    # per-feature range midpoints recovers the sample within 1e-12
    rng = np.random.default_rng(55)
    worst = 0.0
    for _ in range(200):
        T = int(rng.integers(2, 30))
        F = int(rng.integers(1, 4))
        sample = validate_sample(rng.normal(size=(T, F)) * rng.uniform(0.1, 20.0))
        count = int(rng.integers(1, T * F + 1))
        flat = rng.choice(T * F, size=count, replace=False)
        cells = sorted((int(q) // F, int(q) % F) for q in flat)
        once = perturb_cells(sample, cells, "inverse")
        col_max = sample.values.max(axis=0)
        col_min = sample.values.min(axis=0)
        twice = once.values.copy()
        for t, f in cells:
            twice[t, f] = col_max[f] + col_min[f] - once.values[t, f]
        worst = max(worst, float(np.abs(twice - sample.values).max()))
    assert worst <= 1e-12
    report("inverse-involution", f"worst residual {worst:.2e}")
