"""Under-sampling: fixed-count methods and neighborhood cleaning methods.

Fixed methods (random, cluster centroids, NearMiss, instance hardness) reduce
the majority class to the count given by :func:`~rebalance.core.resolve_targets`.
Cleaning methods (Tomek links, ENN, CNN, OSS, NCR) remove rows by a
neighborhood criterion and reach no particular ratio.  Every method keeps the
minority class intact and outputs kept rows in their original order.
"""

from __future__ import annotations

import numpy as np

from .core import (
    AUTO,
    BaseSampler,
    Dataset,
    ResampleResult,
    SyntheticOrigin,
    class_stats,
    compose_results,
    kept_result,
    ratio_value,
    resolve_targets,
)
from .exceptions import NeighborCountError
from .learners import kmeans_fit, knn_loo_true_class_counts
from .neighbors import EUCLIDEAN, _check_metric, kneighbors, neighbors_among
from .rng import Xoshiro256, check_seed

MAJORITY = "majority"
BOTH = "both"
ALL = "all"


def _split(dataset, stats):
    labels = dataset.labels
    return (
        np.flatnonzero(labels == stats.minority_label),
        np.flatnonzero(labels == stats.majority_label),
    )


class _FixedUnderSampler(BaseSampler):
    fixed = True

    def _fit(self, dataset):
        stats = class_stats(dataset)
        _, target = resolve_targets(stats, self.ratio, "under")
        mins, majs = _split(dataset, stats)
        return {"stats": stats, "target": target, "minority": mins, "majority": majs}


class RandomUnderSampler(_FixedUnderSampler):
    """Keep a uniform random subset of the majority class."""

    def __init__(self, ratio=AUTO, seed=0, with_replacement=False):
        ratio_value(ratio)
        self.ratio = ratio
        self.seed = check_seed(seed)
        self.with_replacement = with_replacement

    def _sample(self, dataset, state):
        majs, target = state["majority"], state["target"]
        if target == len(majs) and not self.with_replacement:
            return kept_result(dataset, np.arange(dataset.n_samples))
        rng = Xoshiro256(self.seed)
        if self.with_replacement:
            picks = [rng.randbelow(len(majs)) for _ in range(target)]
        else:
            picks = rng.choice_indices(len(majs), target)
        kept = np.concatenate([state["minority"], majs[np.asarray(picks, dtype=np.int64)]])
        return kept_result(dataset, kept)


class ClusterCentroids(_FixedUnderSampler):
    """Replace the majority class by the centroids of a k-means clustering.

    ``k`` equals the target majority count.  Centroids are appended after
    the minority rows with provenance carrying no source indices.
    """

    def __init__(self, ratio=AUTO, seed=0, n_init=10, max_iter=300, tol=1e-6):
        ratio_value(ratio)
        self.ratio = ratio
        self.seed = check_seed(seed)
        self.n_init = n_init
        self.max_iter = max_iter
        self.tol = tol

    def _fit(self, dataset):
        state = super()._fit(dataset)
        state["model"] = kmeans_fit(
            dataset.features[state["majority"]], state["target"], seed=self.seed,
            n_init=self.n_init, max_iter=self.max_iter, tol=self.tol,
        )
        return state

    def _sample(self, dataset, state):
        mins = state["minority"]
        centroids = state["model"].centroids
        features = np.vstack([dataset.features[mins], centroids])
        labels = np.concatenate([
            dataset.labels[mins],
            np.full(len(centroids), state["stats"].majority_label, dtype=dataset.labels.dtype),
        ])
        origins = [SyntheticOrigin(None, None, None)] * len(centroids)
        return ResampleResult(Dataset(features, labels), mins, origins)


def _rank(scores, descending=False):
    """Positions sorted by score, ties by ascending position."""
    scores = np.asarray(scores)
    key = -scores if descending else scores
    return np.lexsort((np.arange(len(scores)), key))


class NearMiss(_FixedUnderSampler):
    """Keep the majority rows that NearMiss-1, -2 or -3 ranks first.

    * 1: smallest mean distance to the ``k`` nearest minority rows;
    * 2: smallest mean distance to the ``k`` farthest minority rows;
    * 3: from the union of every minority row's ``m`` nearest majority rows,
      largest mean distance to the ``k`` nearest minority rows.

    If the NearMiss-3 shortlist holds fewer rows than the target, the
    remaining slots go to non-shortlisted rows ranked by the same score.
    Ties are broken by ascending row index.  ``seed`` is accepted for
    interface uniformity; the selection is deterministic.
    """

    stochastic = False

    def __init__(self, variant=1, ratio=AUTO, k=3, m=3, seed=0, metric=EUCLIDEAN):
        if variant not in (1, 2, 3):
            raise ValueError(f"NearMiss variant must be 1, 2 or 3, got {variant!r}")
        ratio_value(ratio)
        _check_metric(metric)
        self.variant = variant
        self.ratio = ratio
        self.k = k
        self.m = m
        self.seed = check_seed(seed)
        self.metric = metric

    def _fit(self, dataset):
        state = super()._fit(dataset)
        mins, majs = state["minority"], state["majority"]
        if self.variant == 2:
            if not 1 <= self.k <= len(mins):
                raise NeighborCountError(f"k={self.k} exceeds {len(mins)} minority rows")
            _, dist = neighbors_among(dataset, majs, mins, len(mins), exclude_self=False)
            score = dist[:, len(mins) - self.k:].mean(axis=1)
        else:
            _, dist = neighbors_among(dataset, majs, mins, self.k, exclude_self=False)
            score = dist.mean(axis=1)
        state["score"] = score
        if self.variant == 3:
            near, _ = neighbors_among(dataset, mins, majs, self.m, exclude_self=False)
            state["shortlist"] = np.isin(majs, np.unique(near))
        return state

    def _sample(self, dataset, state):
        majs, target, score = state["majority"], state["target"], state["score"]
        if self.variant == 3:
            short = state["shortlist"]
            order = np.concatenate([
                np.flatnonzero(short)[_rank(score[short], descending=True)],
                np.flatnonzero(~short)[_rank(score[~short], descending=True)],
            ])
        else:
            order = _rank(score)
        kept = np.concatenate([state["minority"], majs[order[:target]]])
        return kept_result(dataset, kept)


class InstanceHardnessThreshold(_FixedUnderSampler):
    """Drop the majority rows whose own class is least probable.

    Probability is the leave-one-out k-NN fraction of same-label neighbors;
    among equally hard rows the lowest index is removed first.
    """

    stochastic = False

    def __init__(self, ratio=AUTO, k=5, seed=0, metric=EUCLIDEAN):
        ratio_value(ratio)
        _check_metric(metric)
        self.ratio = ratio
        self.k = k
        self.seed = check_seed(seed)
        self.metric = metric

    def _fit(self, dataset):
        state = super()._fit(dataset)
        state["counts"] = knn_loo_true_class_counts(dataset, self.k)
        return state

    def _sample(self, dataset, state):
        majs, target = state["majority"], state["target"]
        n_remove = len(majs) - target
        order = _rank(state["counts"][majs])
        kept = np.concatenate([state["minority"], np.sort(majs[order[n_remove:]])])
        return kept_result(dataset, kept)


def tomek_pairs(dataset: Dataset):
    """All cross-label pairs ``(i, j)``, ``i < j``, that are mutual 1-NN."""
    n = dataset.n_samples
    if n < 2:
        return []
    idx, _ = kneighbors(dataset.features, dataset.features, 1, np.arange(n))
    nn = idx[:, 0]
    labels = dataset.labels
    i = np.arange(n)
    mask = (nn[nn] == i) & (i < nn) & (labels != labels[nn])
    return [(int(a), int(b)) for a, b in zip(i[mask], nn[mask])]


def _tomek_removals(dataset, majority_label, remove):
    removed = set()
    labels = dataset.labels
    for a, b in tomek_pairs(dataset):
        for r in (a, b):
            if remove == BOTH or labels[r] == majority_label:
                removed.add(r)
    return removed


def _without(dataset, removed):
    keep = np.setdiff1d(np.arange(dataset.n_samples), np.fromiter(removed, dtype=np.int64, count=len(removed)))
    return kept_result(dataset, keep)


class _CleaningSampler(BaseSampler):
    stochastic = False


class TomekLinks(_CleaningSampler):
    """Remove the majority member (or both members) of every Tomek link.

    Links are detected once on the input; removals do not trigger
    re-detection.
    """

    def __init__(self, remove=MAJORITY, metric=EUCLIDEAN):
        if remove not in (MAJORITY, BOTH):
            raise ValueError(f"remove must be 'majority' or 'both', got {remove!r}")
        _check_metric(metric)
        self.remove = remove
        self.metric = metric

    def _fit(self, dataset):
        stats = class_stats(dataset)
        return _tomek_removals(dataset, stats.majority_label, self.remove)

    def _sample(self, dataset, removed):
        return _without(dataset, removed)


def _vote_failures(dataset, k):
    """Rows whose label does not win a strict majority of their k neighbors."""
    counts = knn_loo_true_class_counts(dataset, k)
    return 2 * counts <= k


class EditedNearestNeighbours(_CleaningSampler):
    """Remove rows outvoted by their ``k`` nearest neighbors (ties remove).

    ``scope`` is ``'majority'`` (only majority rows are removable) or
    ``'all'``.
    """

    def __init__(self, k=3, scope=MAJORITY, metric=EUCLIDEAN):
        if scope not in (MAJORITY, ALL):
            raise ValueError(f"scope must be 'majority' or 'all', got {scope!r}")
        _check_metric(metric)
        self.k = k
        self.scope = scope
        self.metric = metric

    def _fit(self, dataset):
        stats = class_stats(dataset)
        fails = _vote_failures(dataset, self.k)
        if self.scope == MAJORITY:
            fails &= dataset.labels == stats.majority_label
        return set(np.flatnonzero(fails).tolist())

    def _sample(self, dataset, removed):
        return _without(dataset, removed)


def _condense(dataset, majority_label):
    X, labels = dataset.features, dataset.labels
    majs = np.flatnonzero(labels == majority_label)
    store = np.sort(np.concatenate([np.flatnonzero(labels != majority_label), majs[:1]]))
    in_store = np.zeros(dataset.n_samples, dtype=bool)
    in_store[store] = True
    added = True
    while added:
        added = False
        for i in majs:
            if in_store[i]:
                continue
            idx, _ = kneighbors(X[store], X[i:i + 1], 1)
            if labels[store[idx[0, 0]]] != labels[i]:
                store = np.insert(store, np.searchsorted(store, i), i)
                in_store[i] = True
                added = True
    return store


class CondensedNearestNeighbour(_CleaningSampler):
    """Hart's condensed nearest neighbour rule.

    The store starts as the minority class plus the lowest-index majority
    row; majority rows are swept in index order and added when the store
    misclassifies them by 1-NN, until a sweep adds nothing.  The procedure is
    deterministic; ``seed`` is accepted for interface uniformity.
    """

    def __init__(self, seed=0, metric=EUCLIDEAN):
        _check_metric(metric)
        self.seed = check_seed(seed)
        self.metric = metric

    def _fit(self, dataset):
        return _condense(dataset, class_stats(dataset).majority_label)

    def _sample(self, dataset, store):
        return kept_result(dataset, store)


class OneSidedSelection(_CleaningSampler):
    """Condensed nearest neighbour followed by majority-side Tomek removal."""

    def __init__(self, seed=0, metric=EUCLIDEAN):
        _check_metric(metric)
        self.seed = check_seed(seed)
        self.metric = metric

    def _fit(self, dataset):
        return class_stats(dataset).majority_label

    def _sample(self, dataset, majority_label):
        condensed = kept_result(dataset, _condense(dataset, majority_label))
        # majority label fixed from the full input: the store may invert counts
        removed = _tomek_removals(condensed.dataset, majority_label, MAJORITY)
        return compose_results(condensed, _without(condensed.dataset, removed))


class NeighbourhoodCleaningRule(_CleaningSampler):
    """ENN on the majority class plus removal of majority rows that outvote
    minority rows within their ``k`` neighborhoods."""

    def __init__(self, k=3, metric=EUCLIDEAN):
        _check_metric(metric)
        self.k = k
        self.metric = metric

    def _fit(self, dataset):
        stats = class_stats(dataset)
        n = dataset.n_samples
        labels = dataset.labels
        is_maj = labels == stats.majority_label
        idx, _ = kneighbors(dataset.features, dataset.features, self.k, np.arange(n))
        same = (labels[idx] == labels[:, None]).sum(axis=1)
        fails = 2 * same <= self.k
        removed = set(np.flatnonzero(fails & is_maj).tolist())
        for i in np.flatnonzero(fails & ~is_maj):
            removed.update(int(j) for j in idx[i] if is_maj[j])
        return removed

    def _sample(self, dataset, removed):
        return _without(dataset, removed)


def random_under(d, ratio=AUTO, seed=0, with_replacement=False) -> ResampleResult:
    return RandomUnderSampler(ratio, seed, with_replacement).fit_sample(d)


def cluster_centroids(d, ratio=AUTO, seed=0, **kmeans_params) -> ResampleResult:
    return ClusterCentroids(ratio, seed, **kmeans_params).fit_sample(d)


def near_miss(d, variant=1, ratio=AUTO, k=3, m=3, seed=0) -> ResampleResult:
    return NearMiss(variant, ratio, k, m, seed).fit_sample(d)


def instance_hardness_threshold(d, ratio=AUTO, k=5, seed=0) -> ResampleResult:
    return InstanceHardnessThreshold(ratio, k, seed).fit_sample(d)


def tomek_links(d, remove=MAJORITY) -> ResampleResult:
    return TomekLinks(remove).fit_sample(d)


def edited_nn(d, k=3, scope=MAJORITY) -> ResampleResult:
    return EditedNearestNeighbours(k, scope).fit_sample(d)


def condensed_nn(d, seed=0) -> ResampleResult:
    return CondensedNearestNeighbour(seed).fit_sample(d)


def one_sided_selection(d, seed=0) -> ResampleResult:
    return OneSidedSelection(seed).fit_sample(d)


def neighbourhood_cleaning_rule(d, k=3) -> ResampleResult:
    return NeighbourhoodCleaningRule(k).fit_sample(d)
