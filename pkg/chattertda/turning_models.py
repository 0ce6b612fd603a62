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
Nondimensional single degree of freedom turning model.

The tool displacement ``y`` (in units of the nominal feed) obeys

    y'' + 2 zeta y' + y = b rho^(alpha-1) max(0, 1 + y(t - tau) - y(t))^alpha

with the delay ``tau = 2 pi / speed_ratio`` of one spindle revolution.
The stochastic variant replaces ``b`` by ``b + delta dB/dt`` and is
interpreted in the Ito sense.

Both solvers march on a fixed grid with ``steps_per_delay`` steps per delay,
so the delayed state is always a stored sample.
"""

from __future__ import annotations
from dataclasses import dataclass, field, replace
import logging
import math
from typing import List

import numpy as np

from .errors import DomainError, SimulationDiverged

LOGGER = logging.getLogger("chattertda")

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TurningParams:
    r"""Parameters of the nondimensional turning model.

    ``tau`` is derived from ``speed_ratio`` and never stored.

    >>> p = TurningParams(zeta=0.03, b=0.02, rho=0.01, alpha=0.75, speed_ratio=1.0)
    >>> round(p.tau, 12) == round(2 * math.pi, 12)
    True
    >>> round(p.equilibrium, 6)
    0.063246
    """

    zeta: float
    b: float
    rho: float
    alpha: float
    speed_ratio: float

    def __post_init__(self) -> None:
        for name in ("zeta", "rho", "alpha", "speed_ratio"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise DomainError(f"{name} must be positive, got {value!r}.")
        if not (math.isfinite(self.b) and self.b >= 0.0):
            raise DomainError(f"b must be non-negative, got {self.b!r}.")
        if self.alpha > 1.0:
            raise DomainError(f"alpha must be in (0, 1], got {self.alpha!r}.")

    @property
    def tau(self) -> float:
        return TWO_PI / self.speed_ratio

    @property
    def force_gain(self) -> float:
        """The factor b rho^(alpha-1) in front of the chip thickness term."""
        return self.b * self.rho ** (self.alpha - 1.0)

    @property
    def equilibrium(self) -> float:
        """Constant solution, the delayed and current terms cancel there."""
        return self.force_gain

    @property
    def kappa(self) -> float:
        """Gain of the model linearized about the equilibrium."""
        return self.alpha * self.force_gain

    def at(self, speed_ratio: float, b: float) -> TurningParams:
        """Copy of these parameters at another grid point."""
        return replace(self, speed_ratio=speed_ratio, b=b)


@dataclass(frozen=True)
class SimConfig:
    """Discretization of one simulation run."""

    steps_per_delay: int = 1024
    horizon_delays: int = 32
    seed: int = 0
    blow_up: float = 1.0e6
    initial_history: float = 0.0

    def __post_init__(self) -> None:
        if int(self.steps_per_delay) != self.steps_per_delay or self.steps_per_delay < 1:
            raise DomainError(
                f"steps_per_delay must be a positive integer, got {self.steps_per_delay!r}."
            )
        if int(self.horizon_delays) != self.horizon_delays or self.horizon_delays < 1:
            raise DomainError(
                f"horizon_delays must be a positive integer, got {self.horizon_delays!r}."
            )
        if not (0 <= int(self.seed) < 2**64):
            raise DomainError(f"seed must fit in 64 bits, got {self.seed!r}.")
        if not self.blow_up > 0.0:
            raise DomainError(f"blow_up must be positive, got {self.blow_up!r}.")

    @property
    def total_steps(self) -> int:
        return self.steps_per_delay * self.horizon_delays

    def step_size(self, params: TurningParams) -> float:
        return params.tau / self.steps_per_delay

    def horizon(self, params: TurningParams) -> float:
        return self.horizon_delays * params.tau


@dataclass(frozen=True)
class StochasticParams:
    """The stochastic model: ``base.b`` is the nominal depth of cut."""

    base: TurningParams
    delta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.delta) and self.delta >= 0.0):
            raise DomainError(f"delta must be non-negative, got {self.delta!r}.")


@dataclass
class TimeSeries:
    r"""A uniformly sampled scalar signal ``values[n] = y(t0 + n dt)``.

    >>> ts = TimeSeries(t0=0.0, dt=0.5, values=[1.0, 2.0, 3.0])
    >>> ts.times.tolist()
    [0.0, 0.5, 1.0]
    >>> ts.t_end
    1.0
    >>> TimeSeries(t0=0.0, dt=0.5, values=[float("nan")])
    Traceback (most recent call last):
      ...
    chattertda.errors.DomainError: time series values must be finite.
    """

    t0: float
    dt: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 1 or self.values.size == 0:
            raise DomainError("time series must be a non-empty 1-d sequence.")
        if not self.dt > 0.0:
            raise DomainError(f"time series step must be positive, got {self.dt!r}.")
        if not np.all(np.isfinite(self.values)):
            raise DomainError("time series values must be finite.")

    def __len__(self) -> int:
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)

    @property
    def t_end(self) -> float:
        return self.t0 + self.dt * (self.values.size - 1)


def cutting_force(y_now: float, y_delayed: float, params: TurningParams) -> float:
    r"""Regenerative cutting force with contact loss.

    >>> p = TurningParams(zeta=0.03, b=0.02, rho=0.01, alpha=0.75, speed_ratio=1.0)
    >>> round(cutting_force(0.3, 0.3, p), 6)
    0.063246
    >>> cutting_force(1.5, 0.0, p)
    0.0
    """
    chip = 1.0 + y_delayed - y_now
    if chip <= 0.0:
        return 0.0
    return params.force_gain * chip**params.alpha


def brownian_increments(n: int, dt: float, seed: int) -> np.ndarray:
    r"""Increments of a discretized Brownian path, ``n`` draws of N(0, dt).

    >>> a = brownian_increments(5, 0.01, seed=3)
    >>> b = brownian_increments(5, 0.01, seed=3)
    >>> bool(np.array_equal(a, b))
    True
    """
    if int(n) != n or n < 1:
        raise DomainError(f"number of increments must be positive, got {n!r}.")
    if not dt > 0.0:
        raise DomainError(f"step size must be positive, got {dt!r}.")
    rng = np.random.default_rng(int(seed))
    return math.sqrt(dt) * rng.standard_normal(int(n))


def _diverged(t: float, y: float, bound: float) -> SimulationDiverged:
    return SimulationDiverged(
        f"displacement {y!r} exceeded the blow-up bound {bound!r} at t={t!r}.",
        time=t,
        value=y,
    )


def simulate_deterministic(params: TurningParams, config: SimConfig) -> TimeSeries:
    r"""Integrate the turning DDE with classical RK4 by the method of steps.

    The history on ``[-tau, 0]`` is the constant ``config.initial_history``
    with zero velocity. The delayed state at full steps is a grid value; at
    the half steps it is the cubic Hermite midpoint of the two bracketing
    grid nodes.

    >>> p = TurningParams(zeta=0.03, b=0.0, rho=0.01, alpha=0.75, speed_ratio=1.0)
    >>> ts = simulate_deterministic(p, SimConfig(steps_per_delay=8, horizon_delays=2))
    >>> len(ts), float(abs(ts.values).max())
    (17, 0.0)
    """
    lag = config.steps_per_delay
    n_steps = config.total_steps
    dt = config.step_size(params)
    half = 0.5 * dt
    sixth = dt / 6.0
    eighth = dt / 8.0
    two_zeta = 2.0 * params.zeta
    gain = params.force_gain
    alpha = params.alpha
    bound = config.blow_up
    history = float(config.initial_history)

    def acceleration(y: float, v: float, y_delayed: float) -> float:
        chip = 1.0 + y_delayed - y
        force = gain * chip**alpha if chip > 0.0 else 0.0
        return force - two_zeta * v - y

    ys: List[float] = [history] * (n_steps + 1)
    vs: List[float] = [0.0] * (n_steps + 1)
    y = history
    v = 0.0
    for n in range(n_steps):
        m = n - lag
        if m < 0:
            y_d0 = history
            v_d0 = 0.0
        else:
            y_d0 = ys[m]
            v_d0 = vs[m]
        if m + 1 < 0:
            y_d1 = history
            v_d1 = 0.0
        else:
            y_d1 = ys[m + 1]
            v_d1 = vs[m + 1]
        y_dm = 0.5 * (y_d0 + y_d1) + eighth * (v_d0 - v_d1)

        k1y = v
        k1v = acceleration(y, v, y_d0)
        k2y = v + half * k1v
        k2v = acceleration(y + half * k1y, k2y, y_dm)
        k3y = v + half * k2v
        k3v = acceleration(y + half * k2y, k3y, y_dm)
        k4y = v + dt * k3v
        k4v = acceleration(y + dt * k3y, k4y, y_d1)

        y = y + sixth * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        v = v + sixth * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if not abs(y) <= bound:
            raise _diverged((n + 1) * dt, y, bound)
        ys[n + 1] = y
        vs[n + 1] = v

    return TimeSeries(t0=0.0, dt=dt, values=np.array(ys))


def simulate_stochastic(sparams: StochasticParams, config: SimConfig) -> TimeSeries:
    r"""Integrate the Ito turning SDDE with the Euler-Maruyama method.

    The Brownian increments come from ``brownian_increments`` seeded with
    ``config.seed``; the history is the same as for the deterministic solver.

    >>> p = TurningParams(zeta=0.03, b=0.0, rho=0.01, alpha=0.75, speed_ratio=1.0)
    >>> sp = StochasticParams(base=p, delta=0.05)
    >>> ts = simulate_stochastic(sp, SimConfig(steps_per_delay=8, horizon_delays=2))
    >>> len(ts)
    17
    """
    params = sparams.base
    lag = config.steps_per_delay
    n_steps = config.total_steps
    dt = config.step_size(params)
    two_zeta = 2.0 * params.zeta
    rho_factor = params.rho ** (params.alpha - 1.0)
    nominal = params.b
    alpha = params.alpha
    delta = sparams.delta
    bound = config.blow_up
    history = float(config.initial_history)

    increments = brownian_increments(n_steps, dt, config.seed).tolist()

    ys: List[float] = [history] * (n_steps + 1)
    y = history
    v = 0.0
    for n in range(n_steps):
        m = n - lag
        y_delayed = history if m < 0 else ys[m]
        chip = 1.0 + y_delayed - y
        chip_term = rho_factor * chip**alpha if chip > 0.0 else 0.0
        drift = nominal * chip_term - two_zeta * v - y
        y, v = y + v * dt, v + drift * dt + delta * chip_term * increments[n]
        if not abs(y) <= bound:
            raise _diverged((n + 1) * dt, y, bound)
        ys[n + 1] = y

    return TimeSeries(t0=0.0, dt=dt, values=np.array(ys))
