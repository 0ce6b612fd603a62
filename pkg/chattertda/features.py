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
Feature vectors of persistence diagrams.

For a diagram ``{(x_i, y_i)}`` with largest death ``y_max``:

    f1 = sum x_i (y_i - x_i)
    f2 = sum (y_max - y_i) (y_i - x_i)
    f3 = sum x_i^2 (y_i - x_i)^4
    f4 = sum (y_max - y_i)^2 (y_i - x_i)^4
    f5 = max (y_i - x_i)

f1 and f3 vanish in dimension 0, leaving eight features per signal.
"""

from __future__ import annotations
from dataclasses import dataclass
import logging
from typing import Any, Dict, Iterable, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError, InvalidDiagram
from .persistence import PersistenceDiagram

LOGGER = logging.getLogger("chattertda")

FEATURE_NAMES = (
    "h0_f2",
    "h0_f4",
    "h0_f5",
    "h1_f1",
    "h1_f2",
    "h1_f3",
    "h1_f4",
    "h1_f5",
)
FEATURE_COUNT = len(FEATURE_NAMES)

# Relative spread below which a training feature counts as constant.
DEGENERATE_RTOL = 1.0e-12


def diagram_features(pd: PersistenceDiagram) -> Tuple[float, float, float, float, float]:
    r"""The five diagram functions, all zero for an empty diagram.

    >>> diagram_features(PersistenceDiagram(1, [(1.0, 3.0), (2.0, 4.0)]))
    (6.0, 2.0, 80.0, 16.0, 2.0)
    >>> diagram_features(PersistenceDiagram(0, []))
    (0.0, 0.0, 0.0, 0.0, 0.0)
    """
    if len(pd) == 0:
        return (0.0, 0.0, 0.0, 0.0, 0.0)
    births = pd.births
    deaths = pd.deaths
    lifetimes = deaths - births
    slack = deaths.max() - deaths
    return (
        float(np.sum(births * lifetimes)),
        float(np.sum(slack * lifetimes)),
        float(np.sum(births**2 * lifetimes**4)),
        float(np.sum(slack**2 * lifetimes**4)),
        float(lifetimes.max()),
    )


@dataclass
class FeatureVector:
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (FEATURE_COUNT,):
            raise DomainError(
                f"a feature vector has {FEATURE_COUNT} entries, got shape {self.values.shape}."
            )
        if not np.all(np.isfinite(self.values)):
            raise DomainError("feature values must be finite.")

    @classmethod
    def zeros(cls) -> FeatureVector:
        return cls(np.zeros(FEATURE_COUNT))

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(FEATURE_NAMES, self.values.tolist()))


def feature_vector(pd0: PersistenceDiagram, pd1: PersistenceDiagram) -> FeatureVector:
    r"""Eight features from the dimension 0 and dimension 1 diagrams.

    >>> pd0 = PersistenceDiagram(0, [(0.0, 1.0), (0.0, 2.0)])
    >>> feature_vector(pd0, PersistenceDiagram(1, [])).values.tolist()
    [1.0, 1.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0]
    """
    if pd0.dim != 0 or pd1.dim != 1:
        raise InvalidDiagram(
            f"expected diagrams of dimension 0 and 1, got {pd0.dim} and {pd1.dim}."
        )
    if np.any(pd0.births != 0.0):
        raise InvalidDiagram("dimension 0 diagram has a nonzero birth.")
    _, h0_f2, _, h0_f4, h0_f5 = diagram_features(pd0)
    return FeatureVector([h0_f2, h0_f4, h0_f5, *diagram_features(pd1)])


VectorLike = Union[FeatureVector, Sequence[float], np.ndarray]


def as_matrix(vectors: Iterable[VectorLike]) -> np.ndarray:
    rows = [
        v.values if isinstance(v, FeatureVector) else np.asarray(v, dtype=float)
        for v in vectors
    ]
    if not rows:
        return np.zeros((0, FEATURE_COUNT))
    return np.vstack(rows)


@dataclass(frozen=True, eq=False)
class Normalizer:
    r"""Per-feature standardization fitted on a training set.

    A zero ``std`` marks a degenerate feature, which always maps to 0.

    >>> norm = Normalizer.fit([[0.0] * 8, [2.0] * 8])
    >>> norm.means.tolist() == [1.0] * 8, norm.stds.tolist() == [1.0] * 8
    (True, True)
    >>> norm.apply([3.0] * 8).values.tolist() == [2.0] * 8
    True
    """

    means: np.ndarray
    stds: np.ndarray

    def __post_init__(self) -> None:
        means = np.asarray(self.means, dtype=float)
        stds = np.asarray(self.stds, dtype=float)
        if means.shape != (FEATURE_COUNT,) or stds.shape != (FEATURE_COUNT,):
            raise DomainError(f"normalizer needs {FEATURE_COUNT} means and stds.")
        if not (np.all(np.isfinite(means)) and np.all(np.isfinite(stds))):
            raise DomainError("normalizer statistics must be finite.")
        if np.any(stds < 0.0):
            raise DomainError("standard deviations must be non-negative.")
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "stds", stds)

    @classmethod
    def fit(cls, train: Iterable[VectorLike]) -> Normalizer:
        matrix = as_matrix(train)
        if matrix.shape[0] == 0:
            raise DomainError("cannot fit a normalizer to an empty training set.")
        means = matrix.mean(axis=0)
        stds = matrix.std(axis=0)
        scale = np.maximum(np.abs(means), np.finfo(float).tiny)
        degenerate = stds <= DEGENERATE_RTOL * scale
        stds = np.where(degenerate, 0.0, stds)
        if np.any(degenerate):
            names = [n for n, flag in zip(FEATURE_NAMES, degenerate) if flag]
            LOGGER.debug(f"Constant training features: {', '.join(names)}.")
        return cls(means=means, stds=stds)

    @property
    def degenerate(self) -> np.ndarray:
        return self.stds == 0.0

    def apply_matrix(self, matrix: np.ndarray) -> np.ndarray:
        matrix = np.asarray(matrix, dtype=float)
        safe = np.where(self.degenerate, 1.0, self.stds)
        return np.where(self.degenerate, 0.0, (matrix - self.means) / safe)

    def apply(self, v: VectorLike) -> FeatureVector:
        values = v.values if isinstance(v, FeatureVector) else v
        return FeatureVector(self.apply_matrix(values))

    def denormalize(self, v: VectorLike) -> FeatureVector:
        """Inverse of ``apply``; degenerate features come back as their mean."""
        values = v.values if isinstance(v, FeatureVector) else np.asarray(v, dtype=float)
        return FeatureVector(self.means + values * self.stds)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "features": list(FEATURE_NAMES),
            "means": self.means.tolist(),
            "stds": self.stds.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> Normalizer:
        return cls(means=data["means"], stds=data["stds"])


def fit_normalizer(train: Iterable[VectorLike]) -> Normalizer:
    return Normalizer.fit(train)


def apply_normalizer(norm: Normalizer, v: VectorLike) -> FeatureVector:
    return norm.apply(v)
