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
Vietoris-Rips persistent homology in dimensions 0 and 1.

A simplex enters the filtration at its diameter, the largest pairwise
distance of its vertices. Simplices are totally ordered by
(diameter, dimension, sorted vertex tuple) and coefficients are taken
modulo 2. Pairs with death equal to birth are dropped.

Dimension 0 is a Kruskal sweep with a union-find structure. Dimension 1 is
computed by reducing the coboundary matrix: edges are visited in decreasing
filtration order, the pivot of a column is the earliest triangle of its
coboundary, and edges that merge components in dimension 0 are skipped
since their columns reduce to zero. The resulting pairs equal the pairs of
the ordinary boundary matrix reduction for the same simplex order.
"""

from __future__ import annotations
from dataclasses import dataclass
import logging
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .embedding import PointCloud
from .errors import CapacityExceeded, DomainError

LOGGER = logging.getLogger("chattertda")

DEFAULT_CAPACITY = 400

Edge = Tuple[int, int]


@dataclass
class DistanceMatrix:
    r"""Symmetric matrix of pairwise Euclidean distances.

    >>> DistanceMatrix([[0.0, 1.0], [1.0, 0.0]]).n
    2
    >>> DistanceMatrix([[0.0, 1.0], [2.0, 0.0]])
    Traceback (most recent call last):
      ...
    chattertda.errors.DomainError: distance matrix must be symmetric.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        self.entries = np.asarray(self.entries, dtype=float)
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise DomainError("distance matrix must be square.")
        if not np.array_equal(self.entries, self.entries.T):
            raise DomainError("distance matrix must be symmetric.")
        if np.any(np.diag(self.entries) != 0.0):
            raise DomainError("distance matrix must have a zero diagonal.")
        if not np.all(np.isfinite(self.entries)) or np.any(self.entries < 0.0):
            raise DomainError("distances must be finite and non-negative.")

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def pairwise_distances(cloud: PointCloud) -> DistanceMatrix:
    r"""Euclidean distance matrix of a point cloud.

    >>> dm = pairwise_distances(PointCloud([[0.0, 0.0, 0.0], [3.0, 4.0, 0.0]]))
    >>> float(dm.entries[0, 1])
    5.0
    """
    return DistanceMatrix(squareform(pdist(cloud.points, metric="euclidean")))


@dataclass
class PersistenceDiagram:
    r"""Finite (birth, death) pairs of one homological dimension.

    >>> pd = PersistenceDiagram(1, [(2.0, 4.0), (1.0, 3.0)])
    >>> len(pd), pd.sorted_pairs().tolist()
    (2, [[1.0, 3.0], [2.0, 4.0]])
    >>> PersistenceDiagram(0, [(0.0, 0.0)])
    Traceback (most recent call last):
      ...
    chattertda.errors.DomainError: every pair needs death > birth >= 0.
    """

    dim: int
    pairs: np.ndarray

    def __post_init__(self) -> None:
        if self.dim not in (0, 1):
            raise DomainError(f"only dimensions 0 and 1 are supported, got {self.dim!r}.")
        self.pairs = np.asarray(self.pairs, dtype=float).reshape(-1, 2)
        if not np.all(np.isfinite(self.pairs)):
            raise DomainError("persistence pairs must be finite.")
        births = self.pairs[:, 0]
        deaths = self.pairs[:, 1]
        if np.any(births < 0.0) or np.any(deaths <= births):
            raise DomainError("every pair needs death > birth >= 0.")

    def __len__(self) -> int:
        return self.pairs.shape[0]

    @property
    def births(self) -> np.ndarray:
        return self.pairs[:, 0]

    @property
    def deaths(self) -> np.ndarray:
        return self.pairs[:, 1]

    @property
    def persistence(self) -> np.ndarray:
        return self.pairs[:, 1] - self.pairs[:, 0]

    def sorted_pairs(self) -> np.ndarray:
        """Pairs ordered by birth, then death."""
        order = np.lexsort((self.deaths, self.births))
        return self.pairs[order]


class UnionFind:
    """Disjoint sets over ``0 .. n-1`` with path compression and union by rank."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, element: int) -> int:
        root = element
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[element] != root:
            self.parent[element], element = root, self.parent[element]
        return root

    def unite(self, first: int, second: int) -> bool:
        """Merge two sets, False if both elements were already together."""
        rep_first = self.find(first)
        rep_second = self.find(second)
        if rep_first == rep_second:
            return False

        if self.rank[rep_first] == self.rank[rep_second]:
            self.rank[rep_first] += 1
            self.parent[rep_second] = rep_first
        elif self.rank[rep_first] > self.rank[rep_second]:
            self.parent[rep_second] = rep_first
        else:
            self.parent[rep_first] = rep_second
        return True


def _sorted_edges(dmat: DistanceMatrix) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Edges in increasing filtration order as (rows, cols, diameters)."""
    rows, cols = np.triu_indices(dmat.n, k=1)
    diameters = dmat.entries[rows, cols]
    order = np.lexsort((cols, rows, diameters))
    return rows[order], cols[order], diameters[order]


def _kruskal(dmat: DistanceMatrix) -> List[Tuple[int, int, float]]:
    rows, cols, diameters = _sorted_edges(dmat)
    components = UnionFind(dmat.n)
    merges = []
    for i, j, d in zip(rows.tolist(), cols.tolist(), diameters.tolist()):
        if components.unite(i, j):
            merges.append((i, j, d))
            if len(merges) == dmat.n - 1:
                break
    return merges


def rips_h0(dmat: DistanceMatrix) -> PersistenceDiagram:
    r"""Dimension 0 pairs ``(0, d)``, one per minimum spanning tree edge.

    The essential class is not reported.

    >>> dm = pairwise_distances(PointCloud([[0.0], [1.0], [3.0]]))
    >>> rips_h0(dm).pairs.tolist()
    [[0.0, 1.0], [0.0, 2.0]]
    """
    if dmat.n < 2:
        raise DomainError(f"need at least 2 points, got {dmat.n}.")
    pairs = [(0.0, d) for _, _, d in _kruskal(dmat) if d > 0.0]
    return PersistenceDiagram(0, pairs)


class _CoboundaryReducer:
    """Column reduction of the edge-to-triangle coboundary matrix.

    A triangle ``a < b < c`` is encoded as the integer
    ``rank * n**3 + (a * n + b) * n + c`` where ``rank`` indexes its diameter
    among the sorted distinct distances, so integer order is filtration
    order. Columns are sorted key arrays and column addition is a
    symmetric difference.
    """

    def __init__(self, dmat: DistanceMatrix):
        self.n = dmat.n
        self.values, inverse = np.unique(dmat.entries, return_inverse=True)
        self.ranks = inverse.reshape(self.n, self.n).astype(np.int64)
        self.cube = self.n**3
        self.vertices = np.arange(self.n, dtype=np.int64)
        # pivot key -> reduced column, or the edge when its coboundary is already reduced
        self.owners: Dict[int, Union[Edge, np.ndarray]] = {}

    def diameter(self, key: int) -> float:
        return float(self.values[key // self.cube])

    def _coboundary(self, i: int, j: int) -> np.ndarray:
        n = self.n
        k = self.vertices[(self.vertices != i) & (self.vertices != j)]
        ranks = np.maximum(np.maximum(self.ranks[i, k], self.ranks[j, k]), self.ranks[i, j])
        lo, hi = min(i, j), max(i, j)
        a = np.where(k < lo, k, lo)
        b = np.where(k < lo, lo, np.where(k < hi, k, hi))
        c = np.where(k > hi, k, hi)
        keys = ranks * self.cube + (a * n + b) * n + c
        keys.sort()
        return keys

    def _column_of(self, owner: Union[Edge, np.ndarray]) -> np.ndarray:
        if isinstance(owner, tuple):
            return self._coboundary(*owner)
        return owner

    def reduce(self, i: int, j: int) -> Optional[int]:
        """Reduce the column of edge (i, j); the pivot key, None if it vanishes."""
        column = self._coboundary(i, j)
        pivot = int(column[0])
        if pivot not in self.owners:
            self.owners[pivot] = (i, j)
            return pivot

        while column.size:
            pivot = int(column[0])
            owner = self.owners.get(pivot)
            if owner is None:
                self.owners[pivot] = column
                return pivot
            column = np.setxor1d(column, self._column_of(owner), assume_unique=True)
        return None


def rips_h1(dmat: DistanceMatrix, capacity: int = DEFAULT_CAPACITY) -> PersistenceDiagram:
    r"""Dimension 1 pairs of the Rips filtration up to triangles.

    >>> square = PointCloud([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    >>> pd = rips_h1(pairwise_distances(square))
    >>> [(b, round(d, 12)) for b, d in pd.pairs.tolist()]
    [(1.0, 1.414213562373)]
    """
    n = dmat.n
    if n < 3:
        raise DomainError(f"need at least 3 points, got {n}.")
    if n > capacity:
        raise CapacityExceeded(
            f"{n} points exceed the Rips capacity of {capacity} points."
        )

    cleared = {(i, j) for i, j, _ in _kruskal(dmat)}
    rows, cols, diameters = _sorted_edges(dmat)
    reducer = _CoboundaryReducer(dmat)
    pairs = []
    for i, j, birth in zip(
        rows[::-1].tolist(), cols[::-1].tolist(), diameters[::-1].tolist()
    ):
        if (i, j) in cleared:
            continue
        pivot = reducer.reduce(i, j)
        if pivot is None:  # pragma: no cover
            LOGGER.debug(f"Edge ({i}, {j}) has an essential class in dimension 1.")
            continue
        death = reducer.diameter(pivot)
        if death > birth:
            pairs.append((birth, death))
    return PersistenceDiagram(1, pairs)


def max_persistence(pd: PersistenceDiagram) -> float:
    r"""Largest ``death - birth`` of a diagram, 0 when it is empty.

    >>> max_persistence(PersistenceDiagram(1, [(1.0, 3.0), (2.0, 4.0)]))
    2.0
    >>> max_persistence(PersistenceDiagram(1, []))
    0.0
    """
    if len(pd) == 0:
        return 0.0
    return float(pd.persistence.max())


def diagrams(
    cloud: PointCloud, capacity: int = DEFAULT_CAPACITY
) -> Tuple[PersistenceDiagram, PersistenceDiagram]:
    """H0 and H1 diagrams of a point cloud."""
    dmat = pairwise_distances(cloud)
    return rips_h0(dmat), rips_h1(dmat, capacity)
