"""Over-sampling: random replication and SMOTE (regular, borderline, SVM).

Synthetic rows are appended after all original rows in generation order.
Each carries ``SyntheticOrigin(seed, neighbor, u)`` such that the row equals
``X[seed] + u * (X[neighbor] - X[seed])`` exactly.  Random decisions for one
synthetic row are drawn in a fixed order: seed row, (borderline-2 only) the
side coin, neighbor, coefficient.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .core import (
    AUTO,
    BaseSampler,
    SyntheticOrigin,
    appended_result,
    class_stats,
    ratio_value,
    resolve_targets,
)
from .exceptions import DegenerateInputError, DimensionError
from .learners import linear_svm_fit
from .neighbors import EUCLIDEAN, _check_metric, kneighbors, neighbors_among
from .rng import Xoshiro256, check_seed, derive_seed

REGULAR = "regular"
BORDERLINE1 = "borderline1"
BORDERLINE2 = "borderline2"
SVM = "svm"
KINDS = (REGULAR, BORDERLINE1, BORDERLINE2, SVM)


class DangerTag(Enum):
    SAFE = "safe"
    DANGER = "danger"
    NOISE = "noise"


def interpolate(seed_point, neighbor_point, u):
    """``seed + u * (neighbor - seed)``."""
    a = np.asarray(seed_point, dtype=np.float64)
    b = np.asarray(neighbor_point, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a + u * (b - a)


def _majority_counts(dataset, rows, majority_label, m):
    idx, _ = kneighbors(dataset.features, dataset.features[rows], m, rows)
    return (dataset.labels[idx] == majority_label).sum(axis=1)


def _tags_from_counts(counts, m):
    tags = np.full(len(counts), DangerTag.SAFE, dtype=object)
    tags[2 * counts >= m] = DangerTag.DANGER
    tags[counts == m] = DangerTag.NOISE
    return tags


def classify_danger(dataset, m) -> dict:
    """Tag each minority row from the majority share of its ``m`` neighbors.

    NOISE when all ``m`` are majority, DANGER when at least half are, SAFE
    otherwise.  Returns ``{row_index: DangerTag}`` over minority rows.
    """
    stats = class_stats(dataset)
    mins = np.flatnonzero(dataset.labels == stats.minority_label)
    counts = _majority_counts(dataset, mins, stats.majority_label, m)
    return dict(zip(mins.tolist(), _tags_from_counts(counts, m).tolist()))


class RandomOverSampler(BaseSampler):
    """Append uniform-with-replacement copies of minority rows."""

    fixed = True

    def __init__(self, ratio=AUTO, seed=0):
        ratio_value(ratio)
        self.ratio = ratio
        self.seed = check_seed(seed)

    def _fit(self, dataset):
        stats = class_stats(dataset)
        target, _ = resolve_targets(stats, self.ratio, "over")
        mins = np.flatnonzero(dataset.labels == stats.minority_label)
        return stats, mins, target - stats.n_minority

    def _sample(self, dataset, state):
        stats, mins, n_new = state
        rng = Xoshiro256(self.seed)
        picks = [int(mins[rng.randbelow(len(mins))]) for _ in range(n_new)]
        origins = [SyntheticOrigin(i, i, 0.0) for i in picks]
        return appended_result(
            dataset, dataset.features[picks], stats.minority_label, origins
        )


class SMOTE(BaseSampler):
    """Synthetic minority over-sampling.

    Parameters
    ----------
    kind : {'regular', 'borderline1', 'borderline2', 'svm'}
        * regular: seeds are all minority rows.
        * borderline1: seeds are DANGER minority rows.
        * borderline2: as borderline1, but half of the time the neighbor is
          one of the seed's ``k_neighbors`` nearest majority rows and the
          coefficient is drawn from [0, 0.5).
        * svm: seeds are the non-noise minority support vectors of a linear
          SVM; SAFE seeds extrapolate away from a minority neighbor
          (recorded as a negative coefficient), the others interpolate.
    ratio : 'auto' or float in (0, 1]
    k_neighbors : int
        Minority neighbors considered per seed.
    m_neighbors : int
        Neighborhood used for danger tagging; clamped to ``n - 1``.
    seed : int
    svm_lambda, svm_epochs : float, int
        Pegasos hyperparameters for ``kind='svm'``.
    """

    fixed = True

    def __init__(self, kind=REGULAR, ratio=AUTO, k_neighbors=5, m_neighbors=10,
                 seed=0, svm_lambda=1e-2, svm_epochs=20, metric=EUCLIDEAN):
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
        ratio_value(ratio)
        _check_metric(metric)
        self.kind = kind
        self.ratio = ratio
        self.k_neighbors = k_neighbors
        self.m_neighbors = m_neighbors
        self.seed = check_seed(seed)
        self.svm_lambda = svm_lambda
        self.svm_epochs = svm_epochs
        self.metric = metric

    def _fit(self, dataset):
        stats = class_stats(dataset)
        target, _ = resolve_targets(stats, self.ratio, "over")
        labels = dataset.labels
        mins = np.flatnonzero(labels == stats.minority_label)
        majs = np.flatnonzero(labels == stats.majority_label)
        k = self.k_neighbors
        if len(mins) < 2:
            raise DegenerateInputError("SMOTE needs at least 2 minority rows")
        nn_min, _ = neighbors_among(dataset, mins, mins, k, exclude_self=True)
        state = {
            "stats": stats,
            "n_new": target - stats.n_minority,
            "minority": mins,
            "nn_min": nn_min,
            "seeds": np.arange(len(mins)),
            "extrapolate": np.zeros(len(mins), dtype=bool),
        }
        if self.kind == REGULAR:
            return state
        m = min(self.m_neighbors, dataset.n_samples - 1)
        tags = _tags_from_counts(
            _majority_counts(dataset, mins, stats.majority_label, m), m
        )
        needed = state["n_new"] > 0
        if self.kind in (BORDERLINE1, BORDERLINE2):
            seeds = np.flatnonzero(tags == DangerTag.DANGER)
            if needed and len(seeds) == 0:
                raise DegenerateInputError("no DANGER minority rows to seed borderline SMOTE")
            state["seeds"] = seeds
            if self.kind == BORDERLINE2:
                state["nn_maj"], _ = neighbors_among(
                    dataset, mins, majs, k, exclude_self=False
                )
            return state
        model = linear_svm_fit(
            dataset, self.svm_lambda, self.svm_epochs, seed=derive_seed(self.seed, 1)
        )
        sv_pos = np.flatnonzero(np.isin(mins, model.support_indices))
        seeds = sv_pos[tags[sv_pos] != DangerTag.NOISE]
        if needed and len(seeds) == 0:
            raise DegenerateInputError("no usable minority support vectors for SVM-SMOTE")
        state["seeds"] = seeds
        state["extrapolate"] = tags == DangerTag.SAFE
        state["svm"] = model
        return state

    def _sample(self, dataset, state):
        n_new = state["n_new"]
        mins, nn_min, seeds = state["minority"], state["nn_min"], state["seeds"]
        extrapolate = state["extrapolate"]
        k = nn_min.shape[1]
        rng = Xoshiro256(self.seed)
        seed_rows, nbr_rows, coefs = [], [], []
        for _ in range(n_new):
            pos = int(seeds[rng.randbelow(len(seeds))])
            if self.kind == BORDERLINE2 and rng.random() < 0.5:
                nbr = state["nn_maj"][pos, rng.randbelow(k)]
                u = 0.5 * rng.random()
            else:
                nbr = nn_min[pos, rng.randbelow(k)]
                u = rng.random()
                if extrapolate[pos]:
                    u = -u
            seed_rows.append(int(mins[pos]))
            nbr_rows.append(int(nbr))
            coefs.append(u)
        X = dataset.features
        s = X[seed_rows]
        u = np.asarray(coefs, dtype=np.float64)[:, None]
        new_rows = s + u * (X[nbr_rows] - s)
        origins = [SyntheticOrigin(a, b, c) for a, b, c in zip(seed_rows, nbr_rows, coefs)]
        return appended_result(dataset, new_rows, state["stats"].minority_label, origins)


def random_over(d, ratio=AUTO, seed=0):
    return RandomOverSampler(ratio, seed).fit_sample(d)


def smote(d, cfg=None, **params):
    """Run SMOTE with a configured :class:`SMOTE` instance or keyword parameters."""
    sampler = cfg if cfg is not None else SMOTE(**params)
    return sampler.fit_sample(d)
