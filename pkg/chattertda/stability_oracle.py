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
Analytic stability lobes of the linearized turning model.

Linearizing the turning model about its equilibrium gives the
characteristic equation

    lambda^2 + 2 zeta lambda + 1 + kappa = kappa exp(-lambda tau)

with ``kappa = alpha b rho^(alpha-1)``. Substituting ``lambda = i omega``
(D-subdivision) yields one boundary curve per lobe index ``k``, parametrized
by the chatter frequency ``omega > 1``. The chatter-free region lies below
the pointwise minimum of all lobes.
"""

from __future__ import annotations
from dataclasses import dataclass, field
import logging
import math
from typing import List, Sequence, Tuple

import numpy as np

from .errors import DomainError

LOGGER = logging.getLogger("chattertda")

TWO_PI = 2.0 * math.pi

# Smallest offset omega - 1 of the sampled chatter frequencies.
OMEGA_OFFSET_MIN = 1.0e-5
DEFAULT_OMEGA_SAMPLES = 4000
DEFAULT_OMEGA_MAX = 4.0
MAX_LOBES = 10000


def kappa_of_omega(omega, zeta: float):
    r"""Linearized gain on the stability boundary at chatter frequency omega.

    >>> round(kappa_of_omega(math.sqrt(1.06), 0.03), 12)
    0.0618
    >>> round(kappa_of_omega(1.2, 0.03), 6)
    0.225891
    >>> kappa_of_omega(1.0, 0.03)
    Traceback (most recent call last):
      ...
    chattertda.errors.DomainError: omega must be greater than 1, got 1.0.
    """
    omega_array = np.asarray(omega, dtype=float)
    if np.any(~(omega_array > 1.0)):
        raise DomainError(f"omega must be greater than 1, got {omega!r}.")
    if not zeta > 0.0:
        raise DomainError(f"zeta must be positive, got {zeta!r}.")
    s = omega_array**2 - 1.0
    kappa = (s**2 + 4.0 * zeta**2 * omega_array**2) / (2.0 * s)
    if kappa.ndim == 0:
        return float(kappa)
    return kappa


def critical_omega(zeta: float) -> float:
    """Chatter frequency at which ``kappa_of_omega`` is minimal."""
    return math.sqrt(1.0 + 2.0 * zeta)


def critical_depth(zeta: float, rho: float, alpha: float) -> float:
    r"""Depth of cut below which no lobe reaches, ``2 zeta (1 + zeta) / (alpha rho^(alpha-1))``.

    >>> round(critical_depth(0.03, 0.01, 0.75), 6)
    0.026057
    """
    return 2.0 * zeta * (1.0 + zeta) / (alpha * rho ** (alpha - 1.0))


def _check_model(zeta: float, rho: float, alpha: float) -> None:
    if not zeta > 0.0:
        raise DomainError(f"zeta must be positive, got {zeta!r}.")
    if not rho > 0.0:
        raise DomainError(f"rho must be positive, got {rho!r}.")
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must be in (0, 1], got {alpha!r}.")


def omega_samples(zeta: float, count: int, omega_max: float = DEFAULT_OMEGA_MAX):
    """Chatter frequencies, geometrically dense near 1, always containing
    the frequency of the lobe minimum."""
    if int(count) != count or count < 2:
        raise DomainError(f"omega_samples must be at least 2, got {count!r}.")
    if not omega_max > 1.0 + OMEGA_OFFSET_MIN:
        raise DomainError(f"omega_max must exceed 1, got {omega_max!r}.")
    offsets = np.geomspace(OMEGA_OFFSET_MIN, omega_max - 1.0, int(count) - 1)
    omegas = np.append(1.0 + offsets, critical_omega(zeta))
    return np.unique(omegas)


@dataclass
class LobeCurve:
    """One lobe as a curve parametrized by the chatter frequency."""

    k: int
    omega: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    speed_ratio: np.ndarray
    b_lim: np.ndarray

    def samples(self) -> List[Tuple[float, float]]:
        return list(zip(self.speed_ratio.tolist(), self.b_lim.tolist()))

    def minimum(self) -> Tuple[float, float]:
        """(speed_ratio, b_lim) at the lowest point of the lobe."""
        i = int(np.argmin(self.b_lim))
        return float(self.speed_ratio[i]), float(self.b_lim[i])


def lobe_curve(
    zeta: float,
    rho: float,
    alpha: float,
    k: int,
    omega_samples_count: int = DEFAULT_OMEGA_SAMPLES,
    omega_max: float = DEFAULT_OMEGA_MAX,
) -> LobeCurve:
    _check_model(zeta, rho, alpha)
    if int(k) != k or k < 0:
        raise DomainError(f"lobe index must be a non-negative integer, got {k!r}.")

    omega = omega_samples(zeta, omega_samples_count, omega_max)
    kappa = kappa_of_omega(omega, zeta)
    cos_theta = (1.0 + kappa - omega**2) / kappa
    sin_theta = -2.0 * zeta * omega / kappa
    theta = np.mod(np.arctan2(sin_theta, cos_theta), TWO_PI)
    tau = (TWO_PI * k + theta) / omega
    speed_ratio = TWO_PI / tau
    b_lim = kappa / (alpha * rho ** (alpha - 1.0))
    return LobeCurve(
        k=int(k),
        omega=omega,
        kappa=kappa,
        tau=tau,
        speed_ratio=speed_ratio,
        b_lim=b_lim,
    )


def lobe_boundary(
    zeta: float,
    rho: float,
    alpha: float,
    k: int,
    omega_samples_count: int = DEFAULT_OMEGA_SAMPLES,
    omega_max: float = DEFAULT_OMEGA_MAX,
) -> List[Tuple[float, float]]:
    r"""The k-th stability lobe as (speed_ratio, b_lim) pairs.

    >>> lobe = lobe_boundary(0.03, 0.01, 0.75, k=1, omega_samples_count=50)
    >>> round(min(b for _, b in lobe), 6)
    0.026057
    """
    return lobe_curve(zeta, rho, alpha, k, omega_samples_count, omega_max).samples()


@dataclass
class LobeBoundary:
    r"""Minimal stability boundary ``b_lim(speed_ratio)`` on a sorted speed grid.

    >>> lb = LobeBoundary(speed_ratio=[1.0, 2.0], b_lim=[0.1, 0.3])
    >>> lb.b_lim_at(1.5)
    0.2
    """

    speed_ratio: np.ndarray
    b_lim: np.ndarray

    def __post_init__(self) -> None:
        self.speed_ratio = np.asarray(self.speed_ratio, dtype=float)
        self.b_lim = np.asarray(self.b_lim, dtype=float)
        if self.speed_ratio.shape != self.b_lim.shape or self.speed_ratio.size < 2:
            raise DomainError("boundary needs at least two matching samples.")
        if np.any(np.diff(self.speed_ratio) <= 0.0):
            raise DomainError("boundary samples must be sorted by speed ratio.")
        if np.any(~(self.b_lim > 0.0)):
            raise DomainError("boundary depths must be positive.")

    @property
    def samples(self) -> List[Tuple[float, float]]:
        return list(zip(self.speed_ratio.tolist(), self.b_lim.tolist()))

    @property
    def minimum(self) -> float:
        return float(self.b_lim.min())

    def b_lim_at(self, speed_ratio):
        values = np.interp(np.asarray(speed_ratio, dtype=float), self.speed_ratio, self.b_lim)
        if np.ndim(values) == 0:
            return float(values)
        return values

    def distance_in_b(self, speed_ratio: float, b: float) -> float:
        """Signed distance ``b - b_lim(speed_ratio)``, positive above the boundary."""
        return float(b) - self.b_lim_at(speed_ratio)


def _interp_lobe(curve: LobeCurve, speeds: np.ndarray) -> np.ndarray:
    order = np.argsort(curve.speed_ratio, kind="stable")
    return np.interp(
        speeds,
        curve.speed_ratio[order],
        curve.b_lim[order],
        left=np.inf,
        right=np.inf,
    )


def min_boundary(
    zeta: float,
    rho: float,
    alpha: float,
    speed_range: Sequence[float],
    resolution: int,
    omega_samples_count: int = DEFAULT_OMEGA_SAMPLES,
    omega_max: float = DEFAULT_OMEGA_MAX,
) -> LobeBoundary:
    r"""Pointwise minimum of all lobes over a speed range.

    The speed grid is ``resolution`` evenly spaced values, plus the speed of
    every lobe minimum inside the range, so the global minimum of the
    boundary is attained exactly.

    >>> lb = min_boundary(0.03, 0.01, 0.75, (0.2, 2.0), 50, omega_samples_count=400)
    >>> round(lb.minimum, 6)
    0.026057
    """
    _check_model(zeta, rho, alpha)
    lo, hi = (float(v) for v in speed_range)
    if not (0.0 < lo < hi and math.isfinite(hi)):
        raise DomainError(f"invalid speed range {speed_range!r}.")
    if int(resolution) != resolution or resolution < 2:
        raise DomainError(f"resolution must be at least 2, got {resolution!r}.")

    lobes: List[LobeCurve] = []
    for k in range(MAX_LOBES):
        curve = lobe_curve(zeta, rho, alpha, k, omega_samples_count, omega_max)
        if curve.speed_ratio.max() < lo:
            break
        lobes.append(curve)
    else:  # pragma: no cover
        LOGGER.warning(f"Stopped after {MAX_LOBES} lobes above speed ratio {lo}.")
    LOGGER.debug(f"Stability boundary uses {len(lobes)} lobes in [{lo}, {hi}].")

    speeds = np.linspace(lo, hi, int(resolution))
    minima = [curve.minimum()[0] for curve in lobes]
    speeds = np.unique(np.concatenate([speeds, [s for s in minima if lo < s < hi]]))

    b_lim = np.full(speeds.shape, np.inf)
    for curve in lobes:
        b_lim = np.minimum(b_lim, _interp_lobe(curve, speeds))
    if not np.all(np.isfinite(b_lim)):
        raise DomainError(
            f"lobes do not cover the speed range {speed_range!r}, increase omega_max."
        )
    return LobeBoundary(speed_ratio=speeds, b_lim=b_lim)


@dataclass
class LabelGrid:
    r"""Boolean chatter labels, ``labels[i, j]`` for ``(speed_axis[i], depth_axis[j])``.

    >>> g = LabelGrid([1.0, 2.0], [0.1, 0.2], [[False, True], [True, True]])
    >>> g.chatter_fraction
    0.75
    >>> g.shape
    (2, 2)
    """

    speed_axis: np.ndarray
    depth_axis: np.ndarray
    labels: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.speed_axis = np.asarray(self.speed_axis, dtype=float)
        self.depth_axis = np.asarray(self.depth_axis, dtype=float)
        self.labels = np.asarray(self.labels, dtype=bool)
        if self.labels.shape != (self.speed_axis.size, self.depth_axis.size):
            raise DomainError(
                f"label matrix shape {self.labels.shape} does not match the axes "
                f"({self.speed_axis.size}, {self.depth_axis.size})."
            )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.labels.shape

    @property
    def chatter_fraction(self) -> float:
        return float(self.labels.mean()) if self.labels.size else 0.0

    def agreement(self, other: LabelGrid) -> float:
        """Fraction of grid points where both grids carry the same label."""
        if self.shape != other.shape:
            raise DomainError("label grids have different shapes.")
        return float(np.mean(self.labels == other.labels))


def _check_axis(name: str, axis: np.ndarray) -> None:
    if axis.ndim != 1 or axis.size == 0:
        raise DomainError(f"{name} must be a non-empty 1-d sequence.")
    if np.any(np.diff(axis) <= 0.0):
        raise DomainError(f"{name} must be strictly increasing.")


def label_grid(boundary: LobeBoundary, speed_axis, depth_axis) -> LabelGrid:
    r"""Label every grid point above the boundary as chatter.

    >>> lb = LobeBoundary(speed_ratio=[1.0, 2.0], b_lim=[0.1, 0.3])
    >>> label_grid(lb, [1.0, 2.0], [0.0, 0.2, 0.4]).labels.astype(int).tolist()
    [[0, 1, 1], [0, 0, 1]]
    """
    speed_axis = np.asarray(speed_axis, dtype=float)
    depth_axis = np.asarray(depth_axis, dtype=float)
    _check_axis("speed_axis", speed_axis)
    _check_axis("depth_axis", depth_axis)
    limits = np.atleast_1d(boundary.b_lim_at(speed_axis))
    labels = depth_axis[np.newaxis, :] > limits[:, np.newaxis]
    return LabelGrid(speed_axis=speed_axis, depth_axis=depth_axis, labels=labels)
