# -*- coding:utf-8 -*-

#  ************************** Copyrights and license ***************************
#
# This file is part of chattertda 1.0+master, a topological chatter classifier
# for simulated turning processes.
#
# _____________________________________________________________________________
#
# Copyright (c) 2023 the chattertda authors
#
# This software is distributed under the 3-clause BSD License.
# For more information, see the README.rst file.
#
# ****************************************************************************

"""Experiment stages.

Every stage reads its inputs from the output directory and writes its
results there, so a stage can be rerun after deleting its outputs.
"""

from __future__ import annotations
import logging
import os
import time
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .classifier import (
    STATUS_CONSTANT,
    STATUS_DIVERGED,
    STATUS_OK,
    Dataset,
    GridFeatures,
    LogisticModel,
    classify_rows,
    evaluate,
    majority_baseline,
    split_indices,
    train_logistic,
    transfer_classify,
    vote_fractions,
)
from .configuration import ExperimentConfig
from .embedding import EmbeddingConfig, reconstruct, select_delay, takens_embed
from .errors import SimulationDiverged, StageInputMissing, ZeroVariance
from .features import FEATURE_COUNT, FeatureVector, Normalizer, feature_vector
from .formats.csv import CsvHandler
from .formats.html import HtmlHandler
from .formats.json import JsonHandler
from .formats.svg import SvgHandler
from .options import Options
from .persistence import DEFAULT_CAPACITY, diagrams, max_persistence
from .stability_oracle import LabelGrid, label_grid, min_boundary
from .turning_models import (
    SimConfig,
    StochasticParams,
    TurningParams,
    simulate_deterministic,
    simulate_stochastic,
)
from .utils import derive_seed, file_digest, format_float
from .version import __version__
from .workers import Workers

LOGGER = logging.getLogger("chattertda")

MANIFEST = "manifest.json"
BOUNDARY = "boundary.csv"
LABELS = "labels.csv"
FEATURES = "features.csv"
FAILURES = "failures.csv"
NORMALIZER = "normalizer.json"
MODEL = "model.json"
SPLIT = "split.json"
METRICS = "metrics.json"
MISCLASSIFIED = "misclassified.csv"
PREDICTED = "predicted_labels.csv"
TRANSFER_FAILURES = "transfer_failures.csv"
TRANSFER_SUMMARY = "transfer_summary.json"
DETERMINISTIC_MAP = "map_deterministic.svg"
REPORT = "report.html"
COMPARE = "compare.json"

# stage producing each input file, for error messages
PRODUCERS = {
    BOUNDARY: "label",
    LABELS: "label",
    FEATURES: "sweep",
    NORMALIZER: "train",
    MODEL: "train",
    SPLIT: "train",
    METRICS: "evaluate",
    PREDICTED: "evaluate",
    TRANSFER_SUMMARY: "transfer",
}

BOUNDARY_OVERSAMPLING = 8
LOCALIZATION_CELLS = 2
COMPARE_SAMPLES = 264
COMPARE_PERIOD = 24


def delta_suffix(delta: float) -> str:
    r"""File name part of a noise level.

    >>> delta_suffix(0.01)
    'delta_0.01'
    """
    return f"delta_{format_float(delta)}"


class PointResult(NamedTuple):
    features: Tuple[float, ...]
    status: str
    message: str


def featurize_point(
    params: Union[TurningParams, StochasticParams],
    sim_config: SimConfig,
    embedding_config: EmbeddingConfig,
    capacity: int = DEFAULT_CAPACITY,
) -> PointResult:
    """Simulate one grid point and compute its eight features.

    Stochastic parameters select the noisy model.

    A diverged simulation or a constant signal gives the zero feature vector
    and a status other than ``ok``.
    """
    zeros = tuple(FeatureVector.zeros().values.tolist())
    try:
        if isinstance(params, StochasticParams):
            ts = simulate_stochastic(params, sim_config)
        else:
            ts = simulate_deterministic(params, sim_config)
    except SimulationDiverged as err:
        return PointResult(zeros, STATUS_DIVERGED, str(err))
    try:
        rec = reconstruct(ts, embedding_config)
    except ZeroVariance as err:
        return PointResult(zeros, STATUS_CONSTANT, str(err))
    pd0, pd1 = diagrams(rec.cloud, capacity)
    return PointResult(tuple(feature_vector(pd0, pd1).values.tolist()), STATUS_OK, "")


class Stage:
    """Output directory, writers and manifest bookkeeping of one stage run."""

    def __init__(self, name: str, config: ExperimentConfig, options: Options):
        self.name = name
        self.config = config
        self.csv = CsvHandler(options)
        self.json = JsonHandler(options)
        self.svg = SvgHandler(options)
        self.html = HtmlHandler(options)
        self.produced: List[str] = []
        self.started = time.perf_counter()
        os.makedirs(config.out, exist_ok=True)

    def path(self, name: str) -> str:
        return os.path.join(self.config.out, name)

    def require(self, name: str) -> str:
        path = self.path(name)
        if not os.path.isfile(path):
            raise StageInputMissing(path, PRODUCERS.get(name, self.name))
        return path

    def output(self, name: str) -> str:
        self.produced.append(name)
        return self.path(name)

    def finish(self) -> None:
        seconds = time.perf_counter() - self.started
        manifest_path = self.path(MANIFEST)
        snapshot = self.config.to_dict()
        manifest: Dict[str, Any] = {}
        if os.path.isfile(manifest_path):
            manifest = self.json.read_document(manifest_path)
            if manifest.get("config") != snapshot:
                LOGGER.info("Configuration changed, starting a new manifest.")
                manifest = {}
        manifest["config"] = snapshot
        manifest["version"] = __version__
        stages = manifest.setdefault("stages", {})
        stages[self.name] = {
            "files": {name: file_digest(self.path(name)) for name in self.produced},
            "seconds": seconds,
        }
        self.json.write_document(manifest, manifest_path)
        LOGGER.info(f"Stage {self.name} finished in {seconds:.1f} s.")


def _grid_params(
    config: ExperimentConfig, speed: float, b: float, delta: Optional[float]
) -> Union[TurningParams, StochasticParams]:
    if delta is None:
        return config.params_at(speed, b)
    return config.stochastic_params_at(speed, b, delta)


def featurize_grid(
    config: ExperimentConfig,
    delta: Optional[float] = None,
    realizations: int = 1,
) -> Tuple[GridFeatures, List[Dict[str, Any]]]:
    """Features of every grid point, simulated on ``config.workers`` processes.

    Returns the features and one failure record per unusable simulation.
    """
    speeds = config.speed_axis()
    depths = config.depth_axis()
    embedding_config = config.embedding_config()
    width, height = config.grid

    with Workers(config.workers, processes=True) as pool:
        for r in range(realizations):
            for i, speed in enumerate(speeds.tolist()):
                for j, b in enumerate(depths.tolist()):
                    seed = config.point_seed(i, j, delta, r)
                    pool.add(
                        (r, i, j),
                        featurize_point,
                        _grid_params(config, speed, b, delta),
                        config.sim_config(seed),
                        embedding_config,
                        config.rips_capacity,
                    )
    results = pool.results

    features = np.zeros((realizations, width * height, FEATURE_COUNT))
    status = np.full((realizations, width * height), STATUS_OK, dtype=object)
    failures = []
    for (r, i, j), result in sorted(results.items()):
        row = i * height + j
        features[r, row] = result.features
        status[r, row] = result.status
        if result.status != STATUS_OK:
            failures.append(
                {
                    "i": i,
                    "j": j,
                    "delta": delta,
                    "realization": None if delta is None else r,
                    "speed_ratio": speeds[i],
                    "b": depths[j],
                    "status": result.status,
                    "message": result.message,
                }
            )
    if failures:
        LOGGER.warning(
            f"{len(failures)} of {len(results)} simulations were not usable"
            + ("" if delta is None else f" at noise level {delta}")
            + ", see the failure log."
        )
    grid = GridFeatures(speed_axis=speeds, depth_axis=depths, features=features, status=status)
    return grid, failures


def run_label(config: ExperimentConfig, options: Options) -> LabelGrid:
    """Analytic stability boundary and the ground truth labels of the grid."""
    stage = Stage("label", config, options)
    boundary = min_boundary(
        config.zeta,
        config.rho,
        config.alpha,
        config.speed_range,
        BOUNDARY_OVERSAMPLING * config.grid[0],
        omega_samples_count=config.omega_samples,
        omega_max=config.omega_max,
    )
    labels = label_grid(boundary, config.speed_axis(), config.depth_axis())
    LOGGER.info(
        f"Boundary minimum b = {boundary.minimum:.6g}, "
        f"{labels.chatter_fraction:.1%} of the grid chatters."
    )
    stage.csv.write_boundary(boundary, stage.output(BOUNDARY))
    stage.csv.write_label_grid(labels, stage.output(LABELS))
    stage.finish()
    return labels


def run_sweep(config: ExperimentConfig, options: Options) -> Dataset:
    """Featurize every grid point of the deterministic model."""
    stage = Stage("sweep", config, options)
    truth = stage.csv.read_label_grid(stage.require(LABELS))
    grid, failures = featurize_grid(config)

    width, height = config.grid
    status = grid.status[0]
    labels = truth.labels.reshape(-1) & (status != STATUS_CONSTANT)
    rows = np.arange(width * height)
    data = Dataset(
        features=grid.features[0],
        labels=labels,
        speed_ratio=grid.speed_axis[rows // height],
        b=grid.depth_axis[rows % height],
        grid_index=np.column_stack([rows // height, rows % height]),
        status=status,
    )
    stage.csv.write_dataset(data, stage.output(FEATURES))
    stage.csv.write_failures(failures, stage.output(FAILURES))
    stage.finish()
    return data


def _usable_rows(data: Dataset) -> np.ndarray:
    return np.flatnonzero(data.status == STATUS_OK)


def split_rows(config: ExperimentConfig, data: Dataset) -> Tuple[np.ndarray, np.ndarray]:
    """Train and test rows of the feature matrix; only usable rows are split."""
    usable = _usable_rows(data)
    dropped = len(data) - usable.size
    if dropped:
        LOGGER.info(
            f"Split {usable.size} usable of {len(data)} grid points, "
            f"{dropped} diverged or constant points are left out."
        )
    train, test = split_indices(usable.size, config.test_fraction, config.seed)
    return usable[train], usable[test]


def _normalized(data: Dataset, norm: Normalizer) -> Dataset:
    return Dataset(
        features=norm.apply_matrix(data.features),
        labels=data.labels,
        speed_ratio=data.speed_ratio,
        b=data.b,
        grid_index=data.grid_index,
        status=data.status,
    )


def run_train(config: ExperimentConfig, options: Options) -> LogisticModel:
    """Fit the normalizer and the classifier on the training rows."""
    stage = Stage("train", config, options)
    data = stage.csv.read_dataset(stage.require(FEATURES))
    train_rows, test_rows = split_rows(config, data)
    train = data.subset(train_rows)
    norm = Normalizer.fit(train.features)
    model = train_logistic(
        _normalized(train, norm),
        l2_strength=config.l2_strength,
        tol=config.tol,
        max_iter=config.max_iter,
        seed=config.seed,
    )
    LOGGER.info(
        f"Trained on {len(train)} points in {model.iterations} Newton steps"
        f"{'' if model.converged else ' without converging'}."
    )
    split = {
        "seed": config.seed,
        "test_fraction": config.test_fraction,
        "train": train_rows.tolist(),
        "test": test_rows.tolist(),
    }
    stage.json.write_document(norm.to_dict(), stage.output(NORMALIZER))
    stage.json.write_document(model.to_dict(), stage.output(MODEL))
    stage.json.write_document(split, stage.output(SPLIT))
    stage.finish()
    return model


def _load_model(stage: Stage) -> Tuple[LogisticModel, Normalizer]:
    model = LogisticModel.from_dict(stage.json.read_document(stage.require(MODEL)))
    norm = Normalizer.from_dict(stage.json.read_document(stage.require(NORMALIZER)))
    return model, norm


def run_evaluate(config: ExperimentConfig, options: Options) -> Dict[str, Any]:
    """Test accuracy, baseline, error localization and the predicted map."""
    stage = Stage("evaluate", config, options)
    data = stage.csv.read_dataset(stage.require(FEATURES))
    split = stage.json.read_document(stage.require(SPLIT))
    boundary = stage.csv.read_boundary(stage.require(BOUNDARY))
    model, norm = _load_model(stage)

    train = data.subset(split["train"])
    test = data.subset(split["test"])
    matrix, accuracy = evaluate(model, _normalized(test, norm))
    baseline = majority_baseline(train, test)

    predicted = classify_rows(model, norm, data.features, data.status)
    predicted_grid = LabelGrid(
        speed_axis=config.speed_axis(),
        depth_axis=config.depth_axis(),
        labels=predicted.reshape(config.grid),
    )

    depth_step = float(np.diff(config.depth_axis()).mean())
    misclassified = []
    for row in split["test"]:
        if predicted[row] == data.labels[row]:
            continue
        i, j = data.grid_index[row].tolist()
        distance_b = boundary.distance_in_b(data.speed_ratio[row], data.b[row])
        misclassified.append(
            {
                "i": i,
                "j": j,
                "speed_ratio": data.speed_ratio[row],
                "b": data.b[row],
                "label": data.labels[row],
                "predicted": predicted[row],
                "distance_b": distance_b,
                "distance_cells": distance_b / depth_step,
            }
        )
    near = [abs(m["distance_cells"]) <= LOCALIZATION_CELLS for m in misclassified]
    metrics = {
        "accuracy": accuracy,
        "baseline_accuracy": baseline,
        "confusion": matrix.to_dict(),
        "train_size": len(train),
        "test_size": len(test),
        "misclassified": len(misclassified),
        "localization_cells": LOCALIZATION_CELLS,
        "localized_fraction": float(np.mean(near)) if near else 1.0,
        "converged": model.converged,
        "predicted_chatter_fraction": predicted_grid.chatter_fraction,
    }
    LOGGER.info(
        f"Test accuracy {accuracy:.1%}, majority baseline {baseline:.1%}, "
        f"{len(misclassified)} misclassified."
    )
    stage.json.write_document(metrics, stage.output(METRICS))
    stage.csv.write_misclassified(misclassified, stage.output(MISCLASSIFIED))
    stage.csv.write_label_grid(predicted_grid, stage.output(PREDICTED))
    stage.finish()
    return metrics


def run_train_eval(config: ExperimentConfig, options: Options) -> Dict[str, Any]:
    run_train(config, options)
    return run_evaluate(config, options)


def run_transfer(config: ExperimentConfig, options: Options) -> Dict[str, Any]:
    """Classify the stochastic model with the frozen deterministic classifier."""
    stage = Stage("transfer", config, options)
    model, norm = _load_model(stage)
    boundary = stage.csv.read_boundary(stage.require(BOUNDARY))
    predicted = stage.csv.read_label_grid(stage.require(PREDICTED))

    grids = {}
    failures: List[Dict[str, Any]] = []
    for delta in config.deltas:
        grids[delta], delta_failures = featurize_grid(config, delta, config.realizations)
        failures.extend(delta_failures)
    labels = transfer_classify(model, norm, grids)

    summary_rows = []
    for delta in config.deltas:
        suffix = delta_suffix(delta)
        votes = vote_fractions(model, norm, grids[delta])
        stage.csv.write_label_grid(labels[delta], stage.output(f"labels_{suffix}.csv"))
        stage.csv.write_votes(labels[delta], votes, stage.output(f"votes_{suffix}.csv"))
        stage.svg.write_map(
            labels[delta],
            boundary,
            stage.output(f"map_{suffix}.svg"),
            title=f"Stochastic model, noise level {format_float(delta)}",
        )
        summary_rows.append(
            {
                "delta": delta,
                "chatter_fraction": labels[delta].chatter_fraction,
                "failures": sum(1 for f in failures if f["delta"] == delta),
                "map": f"map_{suffix}.svg",
            }
        )
        LOGGER.info(
            f"Noise level {delta}: {labels[delta].chatter_fraction:.1%} chatter."
        )
    summary = {
        "deterministic_chatter_fraction": predicted.chatter_fraction,
        "realizations": config.realizations,
        "deltas": summary_rows,
    }
    stage.csv.write_failures(failures, stage.output(TRANSFER_FAILURES))
    stage.json.write_document(summary, stage.output(TRANSFER_SUMMARY))
    stage.finish()
    return summary


def misclassified_mask(
    truth: LabelGrid, predicted: LabelGrid, test_rows: Sequence[int]
) -> np.ndarray:
    """Grid mask of the test points with a wrong predicted label."""
    mask = np.zeros(truth.labels.size, dtype=bool)
    rows = np.asarray(test_rows, dtype=np.int64)
    wrong = truth.labels.reshape(-1) != predicted.labels.reshape(-1)
    mask[rows] = wrong[rows]
    return mask.reshape(truth.shape)


def run_render(config: ExperimentConfig, options: Options) -> None:
    """Deterministic map and the HTML report."""
    stage = Stage("render", config, options)
    truth = stage.csv.read_label_grid(stage.require(LABELS))
    predicted = stage.csv.read_label_grid(stage.require(PREDICTED))
    boundary = stage.csv.read_boundary(stage.require(BOUNDARY))
    split = stage.json.read_document(stage.require(SPLIT))
    metrics = stage.json.read_document(stage.require(METRICS))
    transfer = stage.json.read_document(stage.require(TRANSFER_SUMMARY))

    stage.svg.write_map(
        predicted,
        boundary,
        stage.output(DETERMINISTIC_MAP),
        misclassified=misclassified_mask(truth, predicted, split["test"]),
        title="Deterministic model, predicted labels",
    )
    maps = [{"file": DETERMINISTIC_MAP, "caption": "Deterministic model"}]
    for row in transfer["deltas"]:
        if not os.path.isfile(stage.path(row["map"])):
            raise StageInputMissing(stage.path(row["map"]), "transfer")
        maps.append({"file": row["map"], "caption": f"Noise level {row['delta']}"})

    context = {
        "metrics": metrics,
        "transfer": transfer,
        "maps": maps,
        "config": config.to_dict(),
    }
    stage.html.write_report(context, stage.output(REPORT))
    stage.finish()


def run_all(config: ExperimentConfig, options: Options) -> None:
    run_label(config, options)
    run_sweep(config, options)
    run_train_eval(config, options)
    run_transfer(config, options)
    run_render(config, options)


def run_simulate(config: ExperimentConfig, options: Options) -> FeatureVector:
    """Simulate a single point and export its signal, optionally its diagrams."""
    stage = Stage("simulate", config, options)
    delta = options.delta
    params = _grid_params(config, options.speed_ratio, options.depth, delta)
    sim_config = config.sim_config(derive_seed(config.seed, 0))
    if delta is None:
        ts = simulate_deterministic(params, sim_config)
    else:
        ts = simulate_stochastic(params, sim_config)
    stage.csv.write_time_series(ts, stage.output("point_series.csv"))

    rec = reconstruct(ts, config.embedding_config())
    pd0, pd1 = diagrams(rec.cloud, config.rips_capacity)
    features = feature_vector(pd0, pd1)
    if options.save_diagrams:
        stage.csv.write_time_series(rec.subsampled, stage.output("point_subsampled.csv"))
        stage.csv.write_point_cloud(rec.cloud, stage.output("point_cloud.csv"))
        stage.csv.write_diagrams([pd0, pd1], stage.output("point_diagrams.csv"))
    document = {
        "speed_ratio": float(options.speed_ratio),
        "b": float(options.depth),
        "delta": delta,
        "delay": rec.eta,
        "features": features.as_dict(),
    }
    stage.json.write_document(document, stage.output("point_features.json"))
    stage.finish()
    return features


def _h1_max_persistence(values: np.ndarray, config: ExperimentConfig) -> float:
    eta = select_delay(values)
    cloud = takens_embed(values, eta, config.embed_dim)
    _, pd1 = diagrams(cloud, config.rips_capacity)
    return max_persistence(pd1)


def compare_signals(
    config: ExperimentConfig, trials: int, noise: float
) -> Dict[str, Any]:
    """Largest H1 persistence of a noisy sine and of white noise of equal variance."""
    phase = 2.0 * np.pi * np.arange(COMPARE_SAMPLES) / COMPARE_PERIOD
    periodic: List[float] = []
    white: List[float] = []
    for trial in range(trials):
        rng = np.random.default_rng(derive_seed(config.seed, trial))
        signal = np.sin(phase) + noise * rng.standard_normal(COMPARE_SAMPLES)
        reference = rng.standard_normal(COMPARE_SAMPLES) * signal.std()
        periodic.append(_h1_max_persistence(signal, config))
        white.append(_h1_max_persistence(reference, config))
    median_periodic = float(np.median(periodic))
    median_white = float(np.median(white))
    return {
        "trials": trials,
        "noise": noise,
        "periodic": periodic,
        "white_noise": white,
        "median_periodic": median_periodic,
        "median_white_noise": median_white,
        "median_ratio": median_periodic / median_white if median_white > 0.0 else None,
    }


def run_compare(config: ExperimentConfig, options: Options) -> Dict[str, Any]:
    stage = Stage("compare", config, options)
    result = compare_signals(config, options.compare_trials, options.compare_noise)
    LOGGER.info(
        f"Median H1 persistence: periodic {result['median_periodic']:.4g}, "
        f"white noise {result['median_white_noise']:.4g}."
    )
    stage.json.write_document(result, stage.output(COMPARE))
    stage.finish()
    return result


COMMAND_RUNNERS = {
    "simulate": run_simulate,
    "label": run_label,
    "sweep": run_sweep,
    "train": run_train,
    "evaluate": run_evaluate,
    "transfer": run_transfer,
    "render": run_render,
    "all": run_all,
    "compare": run_compare,
}
