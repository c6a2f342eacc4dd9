"""End-to-end orchestration: select -> split -> train -> predict -> evaluate,
for one method or a whole comparison run.

A failing method is recorded as failed in its report and in the comparison
table; the remaining methods still run. Nothing here consumes wall-clock
state, so identical configurations produce byte-identical outputs.
"""

from __future__ import annotations

import os

import numpy as np

from . import classify, raster
from .datamodel import GroundTruth, HyperCube, QuantizedCube, label_series, labeled_matrix, quantize_cube
from .errors import ConfigError, IgbsError
from .report import MethodOutcome, RunConfig, render_comparison, render_method_report
from .selection import greedy_select


def load_dataset(config: RunConfig) -> tuple[HyperCube, GroundTruth]:
    if not config.cube or not config.gt:
        raise ConfigError("cube and gt paths are required")
    header = config.cube if config.cube.endswith(".hdr.json") else config.cube + ".hdr.json"
    cube = raster.load_cube(header)
    gt = raster.load_gt(config.gt, rows=cube.rows, cols=cube.cols)
    return cube, gt


def band_features(qcube: QuantizedCube, gt: GroundTruth, bands) -> np.ndarray:
    """Selected bands' quantized values at labeled pixels, scaled to [0, 1]."""
    mat = labeled_matrix(qcube, gt)
    return mat[list(bands)].T.astype(np.float64) / (qcube.levels - 1)


def run_method(
    qcube: QuantizedCube,
    gt: GroundTruth,
    method: str,
    config: RunConfig,
    split: classify.SplitPlan,
) -> MethodOutcome:
    """Run one method end to end; returns its selection, evaluation and the
    full-scene predicted labels (over all labeled pixels)."""
    outcome = MethodOutcome(method=method)
    selection = greedy_select(
        qcube,
        gt,
        method,
        config.k,
        beta=config.beta,
        threshold=config.threshold,
        lam=config.lam,
    )
    outcome.selection = selection
    features = band_features(qcube, gt, selection.selected)
    labels = label_series(gt).symbols
    train_x, train_y = features[split.train_idx], labels[split.train_idx]
    test_x, test_y = features[split.test_idx], labels[split.test_idx]

    if config.classifier == "svm":
        gamma = config.svm_gamma
        if gamma is None:
            gamma = 1.0 / features.shape[1]
        outcome.resolved_gamma = gamma
        model = classify.train_svm(
            train_x, train_y, c=config.svm_c, gamma=gamma, tol=config.svm_tol
        )
        test_pred = classify.predict(model, test_x)
        full_pred = classify.predict(model, features)
    else:
        test_pred = classify.knn_predict(train_x, train_y, test_x)
        full_pred = classify.knn_predict(train_x, train_y, features)

    params = {
        "method": method,
        "selected_bands": list(selection.selected),
        "classifier": config.classifier,
        "svm_c": config.svm_c,
        "svm_gamma": outcome.resolved_gamma,
        "svm_tol": config.svm_tol,
        "levels": config.levels,
        "k": config.k,
        "beta": config.beta,
        "threshold": config.threshold,
        "lam": config.lam,
        "fraction": config.fraction,
        "seed": config.seed,
    }
    outcome.report = classify.evaluate(
        test_pred, test_y, classes=gt.classes, params=params
    )
    outcome.extras["full_prediction"] = full_pred
    return outcome


def run_compare(
    config: RunConfig,
    cube: HyperCube | None = None,
    gt: GroundTruth | None = None,
    write: bool = True,
) -> list[MethodOutcome]:
    """Run every configured method and (optionally) write reports, maps and
    the comparison table under ``config.out``."""
    if cube is None or gt is None:
        cube, gt = load_dataset(config)
    qcube = quantize_cube(cube, config.levels)
    split = classify.stratified_split(gt, fraction=config.fraction, seed=config.seed)
    outcomes = []
    for method in config.methods:
        try:
            outcomes.append(run_method(qcube, gt, method, config, split))
        except IgbsError as exc:
            outcomes.append(MethodOutcome(method=method, error=str(exc)))
    if write:
        write_outputs(config, qcube, gt, outcomes)
    return outcomes


def write_outputs(config, qcube, gt, outcomes) -> None:
    os.makedirs(config.out, exist_ok=True)
    for outcome in outcomes:
        path = os.path.join(config.out, f"{outcome.method}.report.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(render_method_report(config, outcome, bands_total=qcube.bands))
        if outcome.error is None:
            grid = np.zeros((gt.rows, gt.cols), dtype=np.int64)
            grid[gt.mask] = outcome.extras["full_prediction"]
            raster.export_map(grid, os.path.join(config.out, f"{outcome.method}.map.ppm"))
    comparison = render_comparison(config, outcomes, gt.classes)
    with open(os.path.join(config.out, "comparison.txt"), "w", encoding="utf-8") as fh:
        fh.write(comparison)
