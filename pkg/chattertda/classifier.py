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

"""
L2-regularized logistic regression on feature vectors.

The objective is

    sum log(1 + exp(-z_i (w . x_i + c))) + l2_strength / 2 |w|^2

with labels ``z_i`` in {-1, +1} and an unregularized bias ``c``. It is
minimized by Newton steps with Armijo backtracking until the largest
gradient component drops below ``tol``.
"""

from __future__ import annotations
from dataclasses import dataclass, field
import logging
import math
from typing import Any, Callable, Dict, Mapping, Optional, Tuple

import numpy as np
from scipy.special import expit

from .errors import DomainError, SingleClass
from .features import FEATURE_COUNT, FeatureVector, Normalizer
from .stability_oracle import LabelGrid

LOGGER = logging.getLogger("chattertda")

DEFAULT_L2_STRENGTH = 1.0
DEFAULT_TOL = 1.0e-8
DEFAULT_MAX_ITER = 100
DEFAULT_TEST_FRACTION = 0.2

ARMIJO_C1 = 1.0e-4
ARMIJO_SHRINK = 0.5
ARMIJO_MAX_BACKTRACK = 40

STATUS_OK = "ok"
STATUS_CONSTANT = "constant"
STATUS_DIVERGED = "diverged"


@dataclass
class Dataset:
    """Feature rows with binary labels and their grid coordinates."""

    features: np.ndarray
    labels: np.ndarray
    speed_ratio: np.ndarray = None
    b: np.ndarray = None
    grid_index: np.ndarray = None
    status: np.ndarray = None

    def __post_init__(self) -> None:
        self.features = np.asarray(self.features, dtype=float).reshape(-1, FEATURE_COUNT)
        n = self.features.shape[0]
        self.labels = np.asarray(self.labels, dtype=bool).reshape(-1)
        if self.labels.size != n:
            raise DomainError(f"{n} feature rows but {self.labels.size} labels.")
        self.speed_ratio = self._column(self.speed_ratio, n, float)
        self.b = self._column(self.b, n, float)
        if self.grid_index is None:
            self.grid_index = np.full((n, 2), -1, dtype=np.int64)
        self.grid_index = np.asarray(self.grid_index, dtype=np.int64).reshape(n, 2)
        if self.status is None:
            self.status = np.full(n, STATUS_OK, dtype=object)
        self.status = np.asarray(self.status, dtype=object).reshape(-1)
        if self.status.size != n:
            raise DomainError(f"{n} feature rows but {self.status.size} status entries.")

    @staticmethod
    def _column(values, n: int, dtype) -> np.ndarray:
        if values is None:
            return np.full(n, np.nan, dtype=dtype)
        values = np.asarray(values, dtype=dtype).reshape(-1)
        if values.size != n:
            raise DomainError(f"metadata column has {values.size} entries, expected {n}.")
        return values

    def __len__(self) -> int:
        return self.features.shape[0]

    def subset(self, indices) -> Dataset:
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(
            features=self.features[indices],
            labels=self.labels[indices],
            speed_ratio=self.speed_ratio[indices],
            b=self.b[indices],
            grid_index=self.grid_index[indices],
            status=self.status[indices],
        )

    @property
    def chatter_fraction(self) -> float:
        return float(self.labels.mean()) if len(self) else 0.0


@dataclass
class LogisticModel:
    weights: np.ndarray
    bias: float
    l2_strength: float = DEFAULT_L2_STRENGTH
    tol: float = DEFAULT_TOL
    seed: Optional[int] = None
    iterations: int = 0
    converged: bool = True

    def __post_init__(self) -> None:
        self.weights = np.asarray(self.weights, dtype=float).reshape(-1)
        self.bias = float(self.bias)
        if not (np.all(np.isfinite(self.weights)) and math.isfinite(self.bias)):
            raise DomainError("model parameters must be finite.")

    def decision(self, features) -> np.ndarray:
        return np.asarray(features, dtype=float) @ self.weights + self.bias

    def probability(self, features) -> np.ndarray:
        return expit(self.decision(features))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "weights": self.weights.tolist(),
            "bias": self.bias,
            "l2_strength": self.l2_strength,
            "seed": self.seed,
            "tol": self.tol,
            "iterations": self.iterations,
            "converged": self.converged,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> LogisticModel:
        return cls(
            weights=data["weights"],
            bias=data["bias"],
            l2_strength=data.get("l2_strength", DEFAULT_L2_STRENGTH),
            tol=data.get("tol", DEFAULT_TOL),
            seed=data.get("seed"),
            iterations=data.get("iterations", 0),
            converged=data.get("converged", True),
        )


@dataclass
class ConfusionMatrix:
    r"""Counts with chatter as the positive class.

    >>> cm = ConfusionMatrix.from_labels([True, True, False, False], [True, False, False, True])
    >>> (cm.true_positive, cm.false_positive, cm.false_negative, cm.true_negative)
    (1, 1, 1, 1)
    >>> cm.accuracy
    0.5
    """

    true_positive: int = 0
    false_positive: int = 0
    false_negative: int = 0
    true_negative: int = 0

    @classmethod
    def from_labels(cls, actual, predicted) -> ConfusionMatrix:
        actual = np.asarray(actual, dtype=bool)
        predicted = np.asarray(predicted, dtype=bool)
        return cls(
            true_positive=int(np.sum(actual & predicted)),
            false_positive=int(np.sum(~actual & predicted)),
            false_negative=int(np.sum(actual & ~predicted)),
            true_negative=int(np.sum(~actual & ~predicted)),
        )

    @property
    def total(self) -> int:
        return (
            self.true_positive
            + self.false_positive
            + self.false_negative
            + self.true_negative
        )

    @property
    def accuracy(self) -> float:
        if self.total == 0:
            return 0.0
        return (self.true_positive + self.true_negative) / self.total

    def to_dict(self) -> Dict[str, int]:
        return {
            "true_positive": self.true_positive,
            "false_positive": self.false_positive,
            "false_negative": self.false_negative,
            "true_negative": self.true_negative,
        }


def split_indices(n: int, test_fraction: float, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    r"""Random disjoint (train, test) index sets, each sorted.

    >>> train, test = split_indices(10, 0.2, seed=1)
    >>> len(train), len(test), sorted(train.tolist() + test.tolist()) == list(range(10))
    (8, 2, True)
    """
    if not 0.0 < test_fraction < 1.0:
        raise DomainError(f"test fraction must be in (0, 1), got {test_fraction!r}.")
    n_test = int(math.floor(test_fraction * n + 0.5))
    permutation = np.random.default_rng(int(seed)).permutation(n)
    return np.sort(permutation[n_test:]), np.sort(permutation[:n_test])


def train_test_split(
    data: Dataset, test_fraction: float = DEFAULT_TEST_FRACTION, seed: int = 0
) -> Tuple[Dataset, Dataset]:
    if len(data) < 5:
        raise DomainError(f"need at least 5 rows to split, got {len(data)}.")
    train, test = split_indices(len(data), test_fraction, seed)
    return data.subset(train), data.subset(test)


def _signs(labels: np.ndarray) -> np.ndarray:
    return np.where(np.asarray(labels, dtype=bool), 1.0, -1.0)


def objective(weights, bias: float, features, labels, l2_strength: float) -> float:
    weights = np.asarray(weights, dtype=float)
    margins = _signs(labels) * (np.asarray(features, dtype=float) @ weights + bias)
    return float(
        np.sum(np.logaddexp(0.0, -margins)) + 0.5 * l2_strength * np.dot(weights, weights)
    )


def gradient(
    weights, bias: float, features, labels, l2_strength: float
) -> Tuple[np.ndarray, float]:
    """Gradient of ``objective`` with respect to (weights, bias)."""
    weights = np.asarray(weights, dtype=float)
    features = np.asarray(features, dtype=float)
    signs = _signs(labels)
    residual = -signs * expit(-signs * (features @ weights + bias))
    return features.T @ residual + l2_strength * weights, float(np.sum(residual))


def _hessian(theta: np.ndarray, design: np.ndarray, l2_strength: float) -> np.ndarray:
    p = expit(design @ theta)
    curvature = p * (1.0 - p)
    hessian = design.T @ (design * curvature[:, np.newaxis])
    ridge = np.full(theta.size, l2_strength)
    ridge[-1] = 0.0
    return hessian + np.diag(ridge)


def _armijo(
    fun: Callable[[np.ndarray], float],
    theta: np.ndarray,
    direction: np.ndarray,
    f0: float,
    slope: float,
) -> Optional[float]:
    step = 1.0
    for _ in range(ARMIJO_MAX_BACKTRACK):
        if fun(theta + step * direction) <= f0 + ARMIJO_C1 * step * slope:
            return step
        step *= ARMIJO_SHRINK
    return None


def train_logistic(
    train: Dataset,
    l2_strength: float = DEFAULT_L2_STRENGTH,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    initial: Optional[Tuple[np.ndarray, float]] = None,
    seed: Optional[int] = None,
) -> LogisticModel:
    """Fit the regularized logistic model.

    Without convergence within ``max_iter`` Newton steps the last iterate is
    returned with ``converged=False`` and a warning is logged.
    """
    if not l2_strength >= 0.0:
        raise DomainError(f"l2_strength must be non-negative, got {l2_strength!r}.")
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}.")
    if train.labels.all() or not train.labels.any():
        raise SingleClass("training data contains a single class.")

    features = train.features
    labels = train.labels
    design = np.hstack([features, np.ones((len(train), 1))])

    def fun(theta: np.ndarray) -> float:
        return objective(theta[:-1], theta[-1], features, labels, l2_strength)

    def grad(theta: np.ndarray) -> np.ndarray:
        g_w, g_c = gradient(theta[:-1], theta[-1], features, labels, l2_strength)
        return np.append(g_w, g_c)

    if initial is None:
        theta = np.zeros(features.shape[1] + 1)
    else:
        theta = np.append(np.asarray(initial[0], dtype=float), float(initial[1]))

    converged = False
    iterations = 0
    g = grad(theta)
    for iterations in range(1, max_iter + 1):
        if np.max(np.abs(g)) < tol:
            converged = True
            iterations -= 1
            break
        try:
            direction = np.linalg.solve(_hessian(theta, design, l2_strength), -g)
        except np.linalg.LinAlgError:
            direction = -g
        slope = float(np.dot(g, direction))
        if not slope < 0.0:
            direction = -g
            slope = -float(np.dot(g, g))
        step = _armijo(fun, theta, direction, fun(theta), slope)
        if step is None:
            # rounding hides the decrease close to the optimum
            trial = theta + direction
            g_trial = grad(trial)
            if np.max(np.abs(g_trial)) >= np.max(np.abs(g)):
                break
            theta, g = trial, g_trial
            continue
        theta = theta + step * direction
        g = grad(theta)
    else:
        converged = np.max(np.abs(g)) < tol

    if converged:
        LOGGER.debug(f"Logistic regression converged after {iterations} Newton steps.")
    else:
        LOGGER.warning(
            f"Logistic regression did not converge after {iterations} steps, "
            f"gradient norm {float(np.max(np.abs(g))):.3g} >= tol {tol:.3g}."
        )
    return LogisticModel(
        weights=theta[:-1],
        bias=theta[-1],
        l2_strength=l2_strength,
        tol=tol,
        seed=seed,
        iterations=iterations,
        converged=bool(converged),
    )


def predict(model: LogisticModel, v) -> Tuple[float, bool]:
    r"""Chatter probability and label, ties go to chatter.

    >>> predict(LogisticModel(weights=[0.0] * 8, bias=0.0), [1.0] * 8)
    (0.5, True)
    """
    values = v.values if isinstance(v, FeatureVector) else np.asarray(v, dtype=float)
    p = float(model.probability(values))
    return p, p >= 0.5


def predict_labels(model: LogisticModel, features) -> np.ndarray:
    return model.probability(features) >= 0.5


def evaluate(model: LogisticModel, test: Dataset) -> Tuple[ConfusionMatrix, float]:
    if len(test) == 0:
        raise DomainError("cannot evaluate on an empty test set.")
    matrix = ConfusionMatrix.from_labels(test.labels, predict_labels(model, test.features))
    return matrix, matrix.accuracy


def majority_baseline(train: Dataset, test: Dataset) -> float:
    """Accuracy on ``test`` of always predicting the majority label of ``train``."""
    majority = train.chatter_fraction >= 0.5
    return float(np.mean(test.labels == majority))


def compose_with_normalizer(model: LogisticModel, norm: Normalizer) -> LogisticModel:
    """Equivalent model acting on raw, unnormalized features."""
    active = ~norm.degenerate
    scale = np.where(active, norm.stds, 1.0)
    weights = np.where(active, model.weights / scale, 0.0)
    bias = model.bias - float(np.sum(np.where(active, model.weights * norm.means / scale, 0.0)))
    return LogisticModel(
        weights=weights,
        bias=bias,
        l2_strength=model.l2_strength,
        tol=model.tol,
        seed=model.seed,
        iterations=model.iterations,
        converged=model.converged,
    )


@dataclass
class GridFeatures:
    """Raw features of every grid point, for one or more realizations.

    ``features`` has shape (realizations, W * H, 8) and ``status`` shape
    (realizations, W * H); row ``i * H + j`` belongs to ``(speed_axis[i],
    depth_axis[j])``.
    """

    speed_axis: np.ndarray
    depth_axis: np.ndarray
    features: np.ndarray = field(repr=False)
    status: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.speed_axis = np.asarray(self.speed_axis, dtype=float)
        self.depth_axis = np.asarray(self.depth_axis, dtype=float)
        points = self.speed_axis.size * self.depth_axis.size
        self.features = np.asarray(self.features, dtype=float).reshape(-1, points, FEATURE_COUNT)
        self.status = np.asarray(self.status, dtype=object).reshape(-1, points)
        if self.status.shape[0] != self.features.shape[0]:
            raise DomainError("features and status have different realization counts.")

    @property
    def realizations(self) -> int:
        return self.features.shape[0]


def classify_rows(model: LogisticModel, norm: Normalizer, features, status) -> np.ndarray:
    """Labels of raw feature rows; diverged rows are chatter, constant rows are not."""
    labels = predict_labels(model, norm.apply_matrix(features))
    status = np.asarray(status, dtype=object)
    labels = np.where(status == STATUS_DIVERGED, True, labels)
    labels = np.where(status == STATUS_CONSTANT, False, labels)
    return labels.astype(bool)


def vote_fractions(model: LogisticModel, norm: Normalizer, grid: GridFeatures) -> np.ndarray:
    """Fraction of realizations classified as chatter, shaped like the grid."""
    votes = np.zeros(grid.features.shape[1])
    for r in range(grid.realizations):
        votes += classify_rows(model, norm, grid.features[r], grid.status[r])
    votes /= grid.realizations
    return votes.reshape(grid.speed_axis.size, grid.depth_axis.size)


def classify_grid(model: LogisticModel, norm: Normalizer, grid: GridFeatures) -> LabelGrid:
    return LabelGrid(
        speed_axis=grid.speed_axis,
        depth_axis=grid.depth_axis,
        labels=vote_fractions(model, norm, grid) >= 0.5,
    )


def transfer_classify(
    model: LogisticModel, norm: Normalizer, grids: Mapping[float, GridFeatures]
) -> Dict[float, LabelGrid]:
    """One predicted label grid per noise level, with the frozen model and normalizer."""
    return {delta: classify_grid(model, norm, grid) for delta, grid in grids.items()}
