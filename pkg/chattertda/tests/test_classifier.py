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

import logging

import numpy as np
import pytest

from ..classifier import (
    STATUS_CONSTANT,
    STATUS_DIVERGED,
    STATUS_OK,
    ConfusionMatrix,
    Dataset,
    GridFeatures,
    LogisticModel,
    classify_grid,
    classify_rows,
    compose_with_normalizer,
    evaluate,
    gradient,
    majority_baseline,
    objective,
    predict,
    predict_labels,
    split_indices,
    train_logistic,
    train_test_split,
    transfer_classify,
    vote_fractions,
)
from ..errors import DomainError, SingleClass
from ..features import Normalizer


def make_dataset(n=200, seed=0, noise=0.5):
    rng = np.random.default_rng(seed)
    features = rng.standard_normal((n, 8))
    true_weights = np.array([2.0, -1.0, 0.5, 0.0, 0.0, 1.5, 0.0, -0.5])
    score = features @ true_weights + 0.3 + noise * rng.standard_normal(n)
    return Dataset(features=features, labels=score > 0.0)


def test_gradient_matches_finite_differences():
    data = make_dataset(n=30, seed=1)
    rng = np.random.default_rng(2)
    h = 1e-6
    for _ in range(20):
        weights = rng.standard_normal(8)
        bias = float(rng.standard_normal())
        g_w, g_c = gradient(weights, bias, data.features, data.labels, 0.7)
        analytic = np.append(g_w, g_c)
        numeric = np.zeros(9)
        for k in range(9):
            step = np.zeros(9)
            step[k] = h
            plus = objective(weights + step[:8], bias + step[8], data.features, data.labels, 0.7)
            minus = objective(weights - step[:8], bias - step[8], data.features, data.labels, 0.7)
            numeric[k] = (plus - minus) / (2 * h)
        error = np.linalg.norm(numeric - analytic) / np.linalg.norm(analytic)
        assert error < 1e-6


def test_bias_is_not_regularized():
    data = make_dataset(n=20)
    weights = np.zeros(8)
    low = objective(weights, 3.0, data.features, data.labels, 0.0)
    high = objective(weights, 3.0, data.features, data.labels, 100.0)
    assert low == high


def test_training_converges():
    data = make_dataset()
    model = train_logistic(data, l2_strength=1.0)
    assert model.converged
    g_w, g_c = gradient(model.weights, model.bias, data.features, data.labels, 1.0)
    assert np.max(np.abs(np.append(g_w, g_c))) < 1e-8
    _, accuracy = evaluate(model, data)
    assert accuracy > 0.85


def test_regularization_shrinks_weights():
    data = make_dataset()
    weak = train_logistic(data, l2_strength=0.01)
    strong = train_logistic(data, l2_strength=100.0)
    assert np.linalg.norm(strong.weights) < np.linalg.norm(weak.weights)


def test_training_is_deterministic():
    data = make_dataset()
    first = train_logistic(data)
    second = train_logistic(data)
    assert first.to_dict() == second.to_dict()


def test_single_class():
    data = Dataset(features=np.zeros((5, 8)), labels=[True] * 5)
    with pytest.raises(SingleClass):
        train_logistic(data)


def test_non_convergence_is_reported(caplog):
    data = make_dataset()
    model = train_logistic(data, max_iter=1, tol=1e-14)
    assert not model.converged
    assert any(
        r.levelno == logging.WARNING and "did not converge" in r.getMessage()
        for r in caplog.records
    )


def test_invalid_hyperparameters():
    data = make_dataset(n=20)
    with pytest.raises(DomainError):
        train_logistic(data, l2_strength=-1.0)
    with pytest.raises(DomainError):
        train_logistic(data, tol=0.0)


def test_tie_goes_to_chatter():
    model = LogisticModel(weights=np.zeros(8), bias=0.0)
    assert predict(model, np.ones(8)) == (0.5, True)


def test_model_from_dict():
    model = LogisticModel(weights=np.arange(8.0), bias=-1.5, seed=3, iterations=7)
    restored = LogisticModel.from_dict(model.to_dict())
    assert restored.to_dict() == model.to_dict()


def test_model_parameters_must_be_finite():
    with pytest.raises(DomainError):
        LogisticModel(weights=[np.inf] + [0.0] * 7, bias=0.0)


def test_composed_model_acts_on_raw_features():
    data = make_dataset()
    data.features[:, 3] = 2.0
    norm = Normalizer.fit(data.features)
    model = train_logistic(
        Dataset(features=norm.apply_matrix(data.features), labels=data.labels)
    )
    raw = compose_with_normalizer(model, norm)
    expected = model.probability(norm.apply_matrix(data.features))
    assert np.allclose(raw.probability(data.features), expected, rtol=1e-10, atol=1e-12)


def test_confusion_matrix():
    cm = ConfusionMatrix.from_labels(
        [True, True, True, False, False], [True, True, False, True, False]
    )
    assert cm.to_dict() == {
        "true_positive": 2,
        "false_positive": 1,
        "false_negative": 1,
        "true_negative": 1,
    }
    assert cm.total == 5
    assert cm.accuracy == pytest.approx(0.6)
    assert ConfusionMatrix().accuracy == 0.0


def test_split_is_reproducible_and_disjoint():
    train, test = split_indices(100, 0.2, seed=9)
    again = split_indices(100, 0.2, seed=9)
    assert len(test) == 20
    assert not set(train.tolist()) & set(test.tolist())
    assert np.array_equal(train, again[0])
    other = split_indices(100, 0.2, seed=10)
    assert not np.array_equal(test, other[1])


@pytest.mark.parametrize("fraction", [0.0, 1.0, -0.1])
def test_invalid_test_fraction(fraction):
    with pytest.raises(DomainError):
        split_indices(10, fraction, seed=0)


def test_train_test_split_keeps_metadata():
    data = make_dataset(n=10)
    data.grid_index = np.column_stack([np.arange(10), np.arange(10)[::-1]])
    train, test = train_test_split(data, 0.3, seed=1)
    assert len(train) + len(test) == 10
    assert np.array_equal(test.grid_index[:, 0] + test.grid_index[:, 1], np.full(len(test), 9))
    with pytest.raises(DomainError):
        train_test_split(data.subset([0, 1, 2]), 0.3)


def test_majority_baseline():
    train = Dataset(features=np.zeros((4, 8)), labels=[True, True, True, False])
    test = Dataset(features=np.zeros((5, 8)), labels=[True, False, False, True, True])
    assert majority_baseline(train, test) == pytest.approx(0.6)


def test_dataset_validation():
    with pytest.raises(DomainError):
        Dataset(features=np.zeros((3, 8)), labels=[True, False])
    with pytest.raises(DomainError):
        Dataset(features=np.zeros((3, 8)), labels=[True, False, True], b=[0.1])
    data = Dataset(features=np.zeros((2, 8)), labels=[True, False])
    assert data.status.tolist() == [STATUS_OK, STATUS_OK]


def test_status_overrides_the_model():
    model = LogisticModel(weights=np.zeros(8), bias=-5.0)
    norm = Normalizer(means=np.zeros(8), stds=np.ones(8))
    labels = classify_rows(
        model, norm, np.zeros((3, 8)), [STATUS_OK, STATUS_DIVERGED, STATUS_CONSTANT]
    )
    assert labels.tolist() == [False, True, False]


def test_transfer_votes():
    model = LogisticModel(weights=np.array([1.0] + [0.0] * 7), bias=0.0)
    norm = Normalizer(means=np.zeros(8), stds=np.ones(8))
    features = np.zeros((3, 4, 8))
    features[:, :, 0] = [
        [1.0, 1.0, -1.0, -1.0],
        [1.0, -1.0, -1.0, -1.0],
        [1.0, -1.0, 1.0, -1.0],
    ]
    status = np.full((3, 4), STATUS_OK, dtype=object)
    grid = GridFeatures([1.0, 2.0], [0.1, 0.2], features, status)
    votes = vote_fractions(model, norm, grid)
    assert votes.shape == (2, 2)
    assert np.allclose(votes, [[1.0, 1 / 3], [1 / 3, 0.0]])
    assert classify_grid(model, norm, grid).labels.tolist() == [[True, False], [False, False]]

    maps = transfer_classify(model, norm, {0.01: grid, 0.05: grid})
    assert sorted(maps) == [0.01, 0.05]
    assert maps[0.05].chatter_fraction == 0.25


def test_predict_labels_matches_predict():
    data = make_dataset(n=20)
    model = train_logistic(data)
    labels = predict_labels(model, data.features)
    assert labels.tolist() == [predict(model, row)[1] for row in data.features]
