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

import math

import numpy as np
import pytest

from ..errors import DomainError, SimulationDiverged
from ..stability_oracle import min_boundary
from ..turning_models import (
    SimConfig,
    StochasticParams,
    TurningParams,
    brownian_increments,
    cutting_force,
    simulate_deterministic,
    simulate_stochastic,
)


def params(b=0.02, speed_ratio=1.0):
    return TurningParams(zeta=0.03, b=b, rho=0.01, alpha=0.75, speed_ratio=speed_ratio)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(zeta=0.0),
        dict(rho=-0.01),
        dict(alpha=1.5),
        dict(alpha=0.0),
        dict(b=-0.1),
        dict(speed_ratio=0.0),
        dict(b=math.nan),
    ],
)
def test_invalid_parameters(kwargs):
    values = dict(zeta=0.03, b=0.02, rho=0.01, alpha=0.75, speed_ratio=1.0)
    values.update(kwargs)
    with pytest.raises(DomainError):
        TurningParams(**values)


def test_derived_quantities():
    p = params(b=0.02, speed_ratio=2.0)
    assert p.tau == pytest.approx(math.pi)
    assert p.force_gain == pytest.approx(0.02 * 0.01**-0.25)
    assert p.kappa == pytest.approx(0.75 * p.force_gain)
    moved = p.at(0.5, 0.04)
    assert (moved.speed_ratio, moved.b, moved.zeta) == (0.5, 0.04, 0.03)


def test_contact_loss():
    p = params()
    assert cutting_force(0.0, 0.0, p) == pytest.approx(p.force_gain)
    assert cutting_force(1.0, 0.0, p) == 0.0
    assert cutting_force(3.0, 0.5, p) == 0.0


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(steps_per_delay=0),
        dict(horizon_delays=0),
        dict(seed=-1),
        dict(blow_up=0.0),
    ],
)
def test_invalid_sim_config(kwargs):
    with pytest.raises(DomainError):
        SimConfig(**kwargs)


def test_zero_depth_stays_at_rest():
    ts = simulate_deterministic(params(b=0.0), SimConfig(steps_per_delay=16, horizon_delays=4))
    assert len(ts) == 65
    assert np.all(ts.values == 0.0)


def test_grid_matches_delay():
    p = params(speed_ratio=2.0)
    config = SimConfig(steps_per_delay=32, horizon_delays=3)
    ts = simulate_deterministic(p, config)
    assert ts.dt == pytest.approx(p.tau / 32)
    assert ts.t_end == pytest.approx(3 * p.tau)
    assert ts.times[0] == 0.0


def test_stable_point_settles_at_equilibrium():
    p = params(b=0.005)
    ts = simulate_deterministic(p, SimConfig(steps_per_delay=64, horizon_delays=64))
    assert abs(ts.values[-1] - p.equilibrium) < 0.2 * p.equilibrium


def test_chatter_point_keeps_oscillating():
    boundary = min_boundary(0.03, 0.01, 0.75, (0.2, 2.0), 200, omega_samples_count=400)
    speed = float(boundary.speed_ratio[np.argmin(boundary.b_lim)])
    config = SimConfig(steps_per_delay=64, horizon_delays=64)
    stable = simulate_deterministic(params(b=0.3 * boundary.minimum, speed_ratio=speed), config)
    chatter = simulate_deterministic(params(b=3.0 * boundary.minimum, speed_ratio=speed), config)
    tail = slice(len(stable) // 2, None)
    assert chatter.values[tail].std() > 10.0 * stable.values[tail].std()


def test_divergence_is_reported():
    with pytest.raises(SimulationDiverged) as excinfo:
        simulate_deterministic(
            params(b=10.0), SimConfig(steps_per_delay=16, horizon_delays=4, blow_up=1e-3)
        )
    assert excinfo.value.time > 0.0
    assert abs(excinfo.value.value) > 1e-3


def test_brownian_increments():
    dw = brownian_increments(20000, 0.01, seed=11)
    assert dw.shape == (20000,)
    assert abs(dw.mean()) < 0.005
    assert dw.var() == pytest.approx(0.01, rel=0.05)
    assert not np.array_equal(dw, brownian_increments(20000, 0.01, seed=12))


def test_stochastic_is_reproducible():
    sp = StochasticParams(base=params(b=0.02), delta=0.05)
    config = SimConfig(steps_per_delay=16, horizon_delays=4, seed=5)
    first = simulate_stochastic(sp, config)
    second = simulate_stochastic(sp, config)
    other = simulate_stochastic(sp, SimConfig(steps_per_delay=16, horizon_delays=4, seed=6))
    assert np.array_equal(first.values, second.values)
    assert not np.array_equal(first.values, other.values)


def test_stochastic_without_noise_is_deterministic():
    sp = StochasticParams(base=params(b=0.02), delta=0.0)
    a = simulate_stochastic(sp, SimConfig(steps_per_delay=16, horizon_delays=4, seed=1))
    b = simulate_stochastic(sp, SimConfig(steps_per_delay=16, horizon_delays=4, seed=2))
    assert np.array_equal(a.values, b.values)


def test_negative_noise_level():
    with pytest.raises(DomainError):
        StochasticParams(base=params(), delta=-0.01)


def _endpoint_errors(solve, steps, reference):
    """Distance of each solution to the reference on the shared coarse grid."""
    errors = []
    for count in steps:
        ts = solve(count)
        stride = reference.size // (len(ts) - 1)
        errors.append(float(np.max(np.abs(ts.values - reference[::stride]))))
    return errors


def test_rk4_converges_at_fourth_order():
    p = params(b=0.02)

    def solve(count):
        return simulate_deterministic(
            p, SimConfig(steps_per_delay=count, horizon_delays=2, initial_history=0.1)
        )

    reference = solve(2048).values
    e32, e64 = _endpoint_errors(solve, (32, 64), reference)
    assert 3.5 <= math.log2(e32 / e64) <= 4.5


def test_euler_maruyama_drift_converges_at_first_order():
    p = params(b=0.02)
    reference = simulate_deterministic(
        p, SimConfig(steps_per_delay=2048, horizon_delays=2, initial_history=0.1)
    ).values

    def solve(count):
        return simulate_stochastic(
            StochasticParams(base=p, delta=0.0),
            SimConfig(steps_per_delay=count, horizon_delays=2, initial_history=0.1),
        )

    e128, e256 = _endpoint_errors(solve, (128, 256), reference)
    assert 0.8 <= math.log2(e128 / e256) <= 1.2


@pytest.mark.parametrize("b", [0.005, 0.02, 0.2])
def test_equilibrium_history_is_invariant(b):
    p = params(b=b)
    config = SimConfig(steps_per_delay=16, horizon_delays=8, initial_history=p.equilibrium)
    ts = simulate_deterministic(p, config)
    assert np.allclose(ts.values, p.equilibrium, rtol=0.0, atol=1e-12)
    noiseless = simulate_stochastic(StochasticParams(base=p, delta=0.0), config)
    assert np.allclose(noiseless.values, p.equilibrium, rtol=0.0, atol=1e-12)


def test_subcritical_depth_converges_to_equilibrium():
    p = params(b=0.02, speed_ratio=1.0)
    ts = simulate_deterministic(p, SimConfig(steps_per_delay=64, horizon_delays=200))
    assert abs(ts.values[-1] - p.equilibrium) < 1e-3


def test_ensemble_spread_grows_with_noise_level():
    p = params(b=0.01)
    spreads = []
    for delta in (0.0, 0.02, 0.05, 0.1):
        tails = [
            simulate_stochastic(
                StochasticParams(base=p, delta=delta),
                SimConfig(steps_per_delay=32, horizon_delays=32, seed=seed),
            ).values[-256:]
            for seed in range(8)
        ]
        spreads.append(float(np.mean([tail.std() for tail in tails])))
    assert spreads[0] < spreads[1] < spreads[2] < spreads[3]


def test_brownian_increment_moments():
    n, dt = 100_000, 0.004
    dw = brownian_increments(n, dt, seed=2023)
    assert abs(dw.mean()) < 4.0 * math.sqrt(dt / n)
    assert dw.var() == pytest.approx(dt, rel=0.02)
