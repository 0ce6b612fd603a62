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

import numpy as np
import pytest

from ..embedding import (
    EmbeddingConfig,
    PointCloud,
    autocorrelation,
    first_zero_lag,
    reconstruct,
    select_delay,
    subsample_indices,
    takens_embed,
    truncate_and_subsample,
)
from ..errors import DomainError, InsufficientSamples, ZeroVariance
from ..turning_models import TimeSeries


def test_subsample_keeps_second_half():
    indices = subsample_indices(32769, 264)
    assert indices.size == 264
    assert indices[0] == 16384
    assert indices[-1] == 32768
    assert np.all(np.diff(indices) > 0)


def test_subsample_needs_enough_samples():
    with pytest.raises(InsufficientSamples):
        subsample_indices(527, 264)
    assert subsample_indices(528, 264).size == 264


def test_truncate_and_subsample():
    ts = TimeSeries(t0=0.0, dt=0.1, values=np.arange(101.0))
    sub = truncate_and_subsample(ts, EmbeddingConfig(subsample_count=11, embed_dim=3))
    assert sub.values.tolist() == [float(v) for v in range(50, 101, 5)]
    assert sub.t0 == pytest.approx(5.0)
    assert sub.dt == pytest.approx(0.5)
    assert sub.t_end == pytest.approx(ts.t_end)


@pytest.mark.parametrize(
    "kwargs", [dict(subsample_count=1), dict(embed_dim=0), dict(subsample_count=2.5)]
)
def test_invalid_embedding_config(kwargs):
    with pytest.raises(DomainError):
        EmbeddingConfig(**kwargs)


def test_autocorrelation_starts_at_one():
    rng = np.random.default_rng(3)
    acf = autocorrelation(rng.standard_normal(300))
    assert acf[0] == pytest.approx(1.0)
    assert acf.size == 101
    assert np.all(np.abs(acf) <= 1.0 + 1e-12)


def test_autocorrelation_of_constant_series():
    with pytest.raises(ZeroVariance):
        autocorrelation(np.full(10, 2.5))


def test_autocorrelation_rejects_long_lag():
    with pytest.raises(DomainError):
        autocorrelation(np.arange(5.0), max_lag=5)


def test_delay_of_sine_is_quarter_period():
    values = np.sin(2 * np.pi * np.arange(400) / 40)
    assert select_delay(values) in (10, 11)


def test_first_zero_lag_without_crossing():
    assert first_zero_lag([1.0, 0.9, 0.7, 0.8]) == 2
    with pytest.raises(DomainError):
        first_zero_lag([1.0])


def test_takens_embed_shape():
    cloud = takens_embed(np.arange(264.0), eta=7, m=3)
    assert len(cloud) == 264 - 2 * 7
    assert cloud.dimension == 3
    assert cloud.points[-1].tolist() == [249.0, 256.0, 263.0]


def test_takens_embed_too_short():
    with pytest.raises(InsufficientSamples):
        takens_embed(np.arange(10.0), eta=5, m=3)
    with pytest.raises(DomainError):
        takens_embed(np.arange(10.0), eta=0, m=3)


def test_point_cloud_from_flat_array():
    cloud = PointCloud([1.0, 2.0, 3.0])
    assert (len(cloud), cloud.dimension) == (3, 1)


def test_reconstruct_sine():
    t = np.arange(1201) * 0.05
    ts = TimeSeries(t0=0.0, dt=0.05, values=np.sin(t))
    rec = reconstruct(ts, EmbeddingConfig(subsample_count=200, embed_dim=3))
    assert len(rec.subsampled) == 200
    assert rec.eta >= 1
    assert len(rec.cloud) == 200 - 2 * rec.eta
    radius = np.linalg.norm(rec.cloud.points, axis=1)
    assert radius.max() <= np.sqrt(3) + 1e-12


def test_reconstruct_constant_tail():
    values = np.concatenate([np.linspace(1.0, 0.0, 300), np.zeros(301)])
    ts = TimeSeries(t0=0.0, dt=0.1, values=values)
    with pytest.raises(ZeroVariance):
        reconstruct(ts, EmbeddingConfig(subsample_count=100, embed_dim=3))


def test_white_noise_autocorrelation_is_small():
    n = 4096
    noise = np.random.default_rng(21).standard_normal(n)
    acf = autocorrelation(noise, 100)[1:]
    band = 2.0 / np.sqrt(n)
    assert np.mean(np.abs(acf) <= band) >= 0.9
    assert np.all(np.abs(acf) <= 2.0 * band)


@pytest.mark.parametrize("phase", [0.0, 0.7, 2.0])
def test_sine_embeds_on_a_circle(phase):
    values = np.sin(2 * np.pi * np.arange(4000) / 400 + phase)
    eta = select_delay(values)
    points = takens_embed(values, eta, 2).points
    radius = np.linalg.norm(points - points.mean(axis=0), axis=1)
    assert radius.max() / radius.min() < 1.05


def test_embedding_commutes_with_time_shift():
    values = np.random.default_rng(5).standard_normal(300)
    full = takens_embed(values, eta=4, m=3).points
    shifted = takens_embed(values[7:], eta=4, m=3).points
    assert np.array_equal(shifted, full[7:])


def test_constant_offset_translates_the_cloud():
    t = np.arange(600) * 0.05
    values = np.sin(t) + 0.3 * np.sin(2.3 * t)
    offset = 4.5
    assert np.allclose(autocorrelation(values + offset), autocorrelation(values), atol=1e-12)
    eta = select_delay(values)
    assert select_delay(values + offset) == eta
    moved = takens_embed(values + offset, eta, 3).points
    assert np.allclose(moved - takens_embed(values, eta, 3).points, offset, atol=1e-12)
