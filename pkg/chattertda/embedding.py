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
From a simulated signal to a point cloud.

The transient is dropped by keeping the second half of the signal, which is
then thinned to a fixed number of evenly spaced samples. The embedding delay
is the first zero of the autocorrelation function, and the delay vectors
form the point cloud handed to the persistence computation.
"""

from __future__ import annotations
from dataclasses import dataclass, field
import logging
from typing import Optional, Union

import numpy as np

from .errors import DomainError, InsufficientSamples, ZeroVariance
from .turning_models import TimeSeries

LOGGER = logging.getLogger("chattertda")

DEFAULT_SUBSAMPLE_COUNT = 264
DEFAULT_EMBED_DIM = 3


@dataclass(frozen=True)
class EmbeddingConfig:
    subsample_count: int = DEFAULT_SUBSAMPLE_COUNT
    embed_dim: int = DEFAULT_EMBED_DIM

    def __post_init__(self) -> None:
        if int(self.embed_dim) != self.embed_dim or self.embed_dim < 1:
            raise DomainError(
                f"embedding dimension must be a positive integer, got {self.embed_dim!r}."
            )
        if (
            int(self.subsample_count) != self.subsample_count
            or self.subsample_count <= self.embed_dim - 1
            or self.subsample_count < 2
        ):
            raise DomainError(
                f"subsample count {self.subsample_count!r} is too small "
                f"for embedding dimension {self.embed_dim!r}."
            )


@dataclass
class PointCloud:
    r"""Points of equal dimension, one per row.

    >>> PointCloud([[0.0, 1.0], [2.0, 3.0]]).dimension
    2
    >>> PointCloud([[0.0, 1.0]])
    Traceback (most recent call last):
      ...
    chattertda.errors.DomainError: a point cloud needs at least 2 points, got 1.
    """

    points: np.ndarray

    def __post_init__(self) -> None:
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim == 1:
            self.points = self.points[:, np.newaxis]
        if self.points.ndim != 2 or self.points.shape[1] < 1:
            raise DomainError("point cloud must be a 2-d array of points.")
        if self.points.shape[0] < 2:
            raise DomainError(
                f"a point cloud needs at least 2 points, got {self.points.shape[0]}."
            )

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]


SeriesLike = Union[TimeSeries, np.ndarray]


def _values(ts: SeriesLike) -> np.ndarray:
    if isinstance(ts, TimeSeries):
        return ts.values
    return np.asarray(ts, dtype=float)


def subsample_indices(length: int, count: int) -> np.ndarray:
    r"""Indices of ``count`` samples evenly spread over the second half.

    >>> subsample_indices(11, 3).tolist()
    [5, 8, 10]
    >>> subsample_indices(8, 4).tolist()
    [4, 5, 6, 7]
    """
    if length < 2 * count:
        raise InsufficientSamples(
            f"need at least {2 * count} samples to keep {count}, got {length}."
        )
    positions = np.linspace(0.5 * (length - 1), length - 1, count)
    return np.floor(positions + 0.5).astype(np.int64)


def truncate_and_subsample(ts: TimeSeries, config: EmbeddingConfig) -> TimeSeries:
    """Keep ``config.subsample_count`` samples evenly spread over ``[T/2, T]``.

    The returned series starts at the first kept sample and carries the
    nominal spacing ``(T/2) / (count - 1)``.
    """
    count = config.subsample_count
    indices = subsample_indices(len(ts), count)
    half_span = 0.5 * (len(ts) - 1) * ts.dt
    return TimeSeries(
        t0=ts.t0 + indices[0] * ts.dt,
        dt=half_span / (count - 1),
        values=ts.values[indices],
    )


def autocorrelation(ts: SeriesLike, max_lag: Optional[int] = None) -> np.ndarray:
    r"""Biased sample autocorrelation ``r(0..max_lag)`` with ``r(0) = 1``.

    ``max_lag`` defaults to a third of the series length.

    >>> autocorrelation(np.array([1.0, -1.0, 1.0, -1.0]), 2).tolist()
    [1.0, -0.75, 0.5]
    >>> autocorrelation(np.ones(5))
    Traceback (most recent call last):
      ...
    chattertda.errors.ZeroVariance: series is constant, its autocorrelation is undefined.
    """
    values = _values(ts)
    n = values.size
    if max_lag is None:
        max_lag = n // 3
    if int(max_lag) != max_lag or not 0 <= max_lag < n:
        raise DomainError(f"max_lag must be in [0, {n}), got {max_lag!r}.")
    centered = values - values.mean()
    variance = float(np.dot(centered, centered))
    if not variance > 0.0:
        raise ZeroVariance("series is constant, its autocorrelation is undefined.")
    full = np.correlate(centered, centered, mode="full")
    return full[n - 1 : n + int(max_lag)] / variance


def first_zero_lag(acf) -> int:
    r"""Smallest lag with a non-positive autocorrelation.

    Without a sign change the lag of the smallest autocorrelation is used.

    >>> first_zero_lag([1.0, 0.5, -0.1, 0.3])
    2
    >>> first_zero_lag([1.0, 0.9, 0.8, 0.5, 0.6])
    3
    """
    acf = np.asarray(acf, dtype=float)
    if acf.size < 2:
        raise DomainError("need the autocorrelation at lag 1 or above.")
    tail = acf[1:]
    nonpositive = np.flatnonzero(tail <= 0.0)
    if nonpositive.size:
        return int(nonpositive[0]) + 1
    lag = int(np.argmin(tail)) + 1
    LOGGER.debug(f"No zero crossing of the autocorrelation, using lag {lag}.")
    return lag


def takens_embed(ts: SeriesLike, eta: int, m: int) -> PointCloud:
    r"""Delay vectors ``(y[n], y[n + eta], ..., y[n + (m-1) eta])``.

    >>> takens_embed(np.arange(10.0), eta=2, m=3).points[:2].tolist()
    [[0.0, 2.0, 4.0], [1.0, 3.0, 5.0]]
    """
    values = _values(ts)
    if int(eta) != eta or eta < 1:
        raise DomainError(f"delay must be a positive integer, got {eta!r}.")
    if int(m) != m or m < 1:
        raise DomainError(f"embedding dimension must be positive, got {m!r}.")
    count = values.size - (m - 1) * eta
    if count < 2:
        raise InsufficientSamples(
            f"{values.size} samples are too few for m={m} and delay {eta}."
        )
    columns = [values[k * eta : k * eta + count] for k in range(m)]
    return PointCloud(np.column_stack(columns))


def select_delay(ts: SeriesLike, max_lag: Optional[int] = None) -> int:
    return first_zero_lag(autocorrelation(ts, max_lag))


@dataclass
class Reconstruction:
    """Intermediate products of ``reconstruct``."""

    subsampled: TimeSeries
    eta: int
    cloud: PointCloud = field(repr=False)


def reconstruct(ts: TimeSeries, config: EmbeddingConfig) -> Reconstruction:
    """Truncate, subsample, pick the delay and embed one simulated signal.

    Raises ``ZeroVariance`` for a constant tail.
    """
    subsampled = truncate_and_subsample(ts, config)
    eta = select_delay(subsampled)
    cloud = takens_embed(subsampled, eta, config.embed_dim)
    return Reconstruction(subsampled=subsampled, eta=eta, cloud=cloud)
