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

from ..errors import DomainError, InvalidDiagram
from ..features import (
    FEATURE_NAMES,
    FeatureVector,
    Normalizer,
    apply_normalizer,
    as_matrix,
    diagram_features,
    feature_vector,
    fit_normalizer,
)
from ..persistence import PersistenceDiagram


def test_reference_diagram():
    pd = PersistenceDiagram(1, [(1.0, 3.0), (2.0, 4.0)])
    assert diagram_features(pd) == (6.0, 2.0, 80.0, 16.0, 2.0)


def test_empty_diagram():
    assert diagram_features(PersistenceDiagram(1, [])) == (0.0,) * 5


def test_features_do_not_depend_on_pair_order():
    pairs = [(0.5, 0.9), (0.1, 2.0), (1.0, 1.5)]
    forward = diagram_features(PersistenceDiagram(1, pairs))
    backward = diagram_features(PersistenceDiagram(1, pairs[::-1]))
    assert forward == pytest.approx(backward, rel=1e-15)


def test_dimension_zero_drops_vanishing_features():
    pd0 = PersistenceDiagram(0, [(0.0, 1.0), (0.0, 3.0)])
    pd1 = PersistenceDiagram(1, [(1.0, 3.0), (2.0, 4.0)])
    v = feature_vector(pd0, pd1)
    assert v.as_dict() == dict(
        zip(FEATURE_NAMES, [2.0, 4.0, 3.0, 6.0, 2.0, 80.0, 16.0, 2.0])
    )


def test_diagrams_in_wrong_order():
    pd0 = PersistenceDiagram(0, [(0.0, 1.0)])
    with pytest.raises(InvalidDiagram):
        feature_vector(pd0, pd0)


def test_dimension_zero_births_must_vanish():
    with pytest.raises(InvalidDiagram):
        feature_vector(PersistenceDiagram(0, [(0.5, 1.0)]), PersistenceDiagram(1, []))


def test_feature_vector_shape():
    with pytest.raises(DomainError):
        FeatureVector([1.0, 2.0])
    with pytest.raises(DomainError):
        FeatureVector([np.nan] * 8)
    assert FeatureVector.zeros().values.tolist() == [0.0] * 8


def test_as_matrix():
    assert as_matrix([]).shape == (0, 8)
    matrix = as_matrix([FeatureVector.zeros(), [1.0] * 8])
    assert matrix.shape == (2, 8)


def test_normalized_training_set_is_standard():
    rng = np.random.default_rng(4)
    train = rng.normal(loc=5.0, scale=3.0, size=(50, 8))
    norm = fit_normalizer(train)
    normalized = norm.apply_matrix(train)
    assert np.allclose(normalized.mean(axis=0), 0.0, atol=1e-12)
    assert np.allclose(normalized.std(axis=0), 1.0)
    assert np.allclose(norm.denormalize(normalized[3]).values, train[3])


def test_degenerate_feature_maps_to_zero():
    train = np.ones((4, 8))
    train[:, 0] = [1.0, 2.0, 3.0, 4.0]
    norm = Normalizer.fit(train)
    assert norm.degenerate.tolist() == [False] + [True] * 7
    v = apply_normalizer(norm, [2.5] + [7.0] * 7)
    assert v.values.tolist() == [0.0] * 8


def test_normalizer_needs_training_data():
    with pytest.raises(DomainError):
        Normalizer.fit([])


def test_normalizer_from_dict():
    norm = Normalizer.fit(np.arange(24.0).reshape(3, 8))
    restored = Normalizer.from_dict(norm.to_dict())
    assert restored.means.tolist() == norm.means.tolist()
    assert restored.stds.tolist() == norm.stds.tolist()
    assert norm.to_dict()["features"] == list(FEATURE_NAMES)


def test_normalizer_rejects_negative_std():
    with pytest.raises(DomainError):
        Normalizer(means=np.zeros(8), stds=-np.ones(8))


def test_features_of_disjoint_union():
    first = [(0.5, 1.5), (1.0, 5.0), (2.0, 2.5)]
    second = [(0.2, 0.9), (3.0, 5.0), (1.5, 4.0)]
    union = PersistenceDiagram(1, first + second)
    f_first = diagram_features(PersistenceDiagram(1, first))
    f_second = diagram_features(PersistenceDiagram(1, second))
    f_union = diagram_features(union)
    # both parts share the largest death, so the weighted sums add up
    for k in range(4):
        assert f_union[k] == pytest.approx(f_first[k] + f_second[k], rel=1e-12)
    assert f_union[4] == max(f_first[4], f_second[4])


def test_death_weighted_features_follow_the_union_maximum():
    low = [(0.0, 1.0)]
    high = [(0.0, 3.0)]
    f_union = diagram_features(PersistenceDiagram(1, low + high))
    f_low = diagram_features(PersistenceDiagram(1, low))
    assert f_low[1] == 0.0
    assert f_union[1] == pytest.approx(2.0)
    assert f_union[3] == pytest.approx(4.0)
