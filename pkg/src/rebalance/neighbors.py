"""Exact k-nearest-neighbor search.

Neighbors are ranked by Euclidean distance, equal distances by ascending row
index.  :func:`kneighbors` runs the accelerated kernel (compiled when
available, numpy otherwise); :func:`brute_force_knn` is the plain-Python
reference scan it must match index for index.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _backend
from .core import Dataset
from .exceptions import DimensionError, NeighborCountError


class DistanceMetric(Enum):
    EUCLIDEAN = "euclidean"


EUCLIDEAN = DistanceMetric.EUCLIDEAN


def _check_metric(metric):
    if DistanceMetric(metric) is not DistanceMetric.EUCLIDEAN:
        raise ValueError(f"unsupported metric {metric!r}")


@dataclass(frozen=True)
class NeighborList:
    """Neighbors of one query, nearest first."""

    indices: tuple
    distances: tuple

    def __iter__(self):
        return iter(zip(self.indices, self.distances))

    def __len__(self):
        return len(self.indices)

    def pairs(self):
        return list(self)


def pairwise_distance(a, b, metric=EUCLIDEAN) -> float:
    _check_metric(metric)
    a = np.asarray(a, dtype=np.float64).reshape(-1)
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    s = 0.0
    for x, y in zip(a.tolist(), b.tolist()):
        diff = x - y
        s = s + diff * diff
    return math.sqrt(s)


def kneighbors(ref, queries, k, skip=None, *, backend=None, n_jobs=1):
    """k nearest rows of ``ref`` for every row of ``queries``.

    Parameters
    ----------
    ref : ndarray of shape (n, d)
    queries : ndarray of shape (q, d)
    k : int
    skip : array of int, optional
        Per query, a row of ``ref`` to leave out (-1 for none).
    backend : {'compiled', 'python'}, optional
    n_jobs : int
        Worker threads; the result does not depend on it.

    Returns
    -------
    indices : ndarray of shape (q, k), int64
    distances : ndarray of shape (q, k), float64
    """
    ref = np.ascontiguousarray(ref, dtype=np.float64)
    queries = np.ascontiguousarray(queries, dtype=np.float64)
    if ref.ndim != 2 or queries.ndim != 2 or ref.shape[1] != queries.shape[1]:
        raise DimensionError(
            f"reference shape {ref.shape} incompatible with queries {queries.shape}"
        )
    nq = queries.shape[0]
    if skip is None:
        skip = np.full(nq, -1, dtype=np.int64)
    skip = np.ascontiguousarray(skip, dtype=np.int64)
    eligible = ref.shape[0] - (skip >= 0)
    if k < 1 or (nq and k > eligible.min()):
        raise NeighborCountError(
            f"k={k} neighbors requested but only {int(eligible.min()) if nq else ref.shape[0]} eligible"
        )
    if nq == 0:
        return np.empty((0, k), dtype=np.int64), np.empty((0, k))
    kern = _backend.get(backend)
    if n_jobs <= 1 or nq < 2 * n_jobs:
        return kern.knn_search(ref, queries, k, skip)
    bounds = np.linspace(0, nq, n_jobs + 1).astype(int)
    with ThreadPoolExecutor(n_jobs) as pool:
        parts = list(
            pool.map(
                lambda ab: kern.knn_search(
                    ref, queries[ab[0]:ab[1]], k, skip[ab[0]:ab[1]]
                ),
                zip(bounds[:-1], bounds[1:]),
            )
        )
    return (
        np.concatenate([p[0] for p in parts]),
        np.concatenate([p[1] for p in parts]),
    )


def neighbors_among(dataset: Dataset, query_rows, among_rows, k, *,
                    exclude_self=True, backend=None, n_jobs=1):
    """k nearest rows of ``among_rows`` (global indices) for each query row.

    Returned indices are global row indices of ``dataset``.
    """
    query_rows = np.asarray(query_rows, dtype=np.int64).reshape(-1)
    among = np.sort(np.asarray(among_rows, dtype=np.int64).reshape(-1))
    X = dataset.features
    skip = np.full(len(query_rows), -1, dtype=np.int64)
    if exclude_self and len(among):
        pos = np.searchsorted(among, query_rows)
        pos_c = np.minimum(pos, len(among) - 1)
        hit = among[pos_c] == query_rows
        skip[hit] = pos_c[hit]
    idx, dist = kneighbors(
        X[among], X[query_rows], k, skip, backend=backend, n_jobs=n_jobs
    )
    return among[idx], dist


def _eligible_rows(dataset, restrict_to):
    if restrict_to is None:
        return np.arange(dataset.n_samples)
    return np.flatnonzero(dataset.labels == restrict_to)


def knn_query(dataset: Dataset, query_index: int, k: int, restrict_to=None,
              exclude_self=True, metric=EUCLIDEAN, *, backend=None) -> NeighborList:
    """Neighbors of one row; ``restrict_to`` limits candidates to one label."""
    return knn_query_batch(
        dataset, [query_index], k, restrict_to, exclude_self, metric, backend=backend
    )[0]


def knn_query_batch(dataset: Dataset, queries, k: int, restrict_to=None,
                    exclude_self=True, metric=EUCLIDEAN, *, backend=None,
                    n_jobs=1) -> list:
    _check_metric(metric)
    queries = np.asarray(queries, dtype=np.int64).reshape(-1)
    if len(queries) == 0:
        return []
    if queries.min() < 0 or queries.max() >= dataset.n_samples:
        raise IndexError("query index out of range")
    idx, dist = neighbors_among(
        dataset, queries, _eligible_rows(dataset, restrict_to), k,
        exclude_self=exclude_self, backend=backend, n_jobs=n_jobs,
    )
    return [
        NeighborList(tuple(i.tolist()), tuple(d.tolist())) for i, d in zip(idx, dist)
    ]


def brute_force_knn(dataset: Dataset, query_index: int, k: int, restrict_to=None,
                    exclude_self=True) -> NeighborList:
    """Reference O(n) scan: score every eligible row, sort by (distance, index)."""
    rows = dataset.features.tolist()
    labels = dataset.labels.tolist()
    q = rows[query_index]
    scored = []
    for i, row in enumerate(rows):
        if exclude_self and i == query_index:
            continue
        if restrict_to is not None and labels[i] != restrict_to:
            continue
        s = 0.0
        for a, b in zip(q, row):
            diff = a - b
            s = s + diff * diff
        scored.append((math.sqrt(s), i))
    if not 1 <= k <= len(scored):
        raise NeighborCountError(f"k={k} neighbors requested but {len(scored)} eligible")
    scored.sort()
    top = scored[:k]
    return NeighborList(tuple(i for _, i in top), tuple(d for d, _ in top))
