"""EasyEnsemble and BalanceCascade: collections of balanced subsets.

Subset (or iteration) ``i`` draws from ``derive_seed(seed, i)``, so any
single subset can be reproduced without generating its predecessors.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np

from .core import AUTO, ClassStats, class_stats, kept_result, ratio_value, resolve_targets
from .learners import KNNClassifier, linear_svm_fit
from .rng import Xoshiro256, check_seed, derive_seed
from .under_sampling import RandomUnderSampler


@dataclass(frozen=True, eq=False)
class EnsembleSets:
    """Balanced subsets in iteration order.

    ``seeds[i]`` is the seed subset ``i`` was drawn with; ``pool_sizes``
    (BalanceCascade only) is the majority pool size before each iteration
    followed by the final size.
    """

    subsets: tuple
    seeds: tuple
    pool_sizes: tuple = ()

    def __len__(self):
        return len(self.subsets)

    def __iter__(self):
        return iter(self.subsets)

    def equals(self, other):
        return (
            self.seeds == other.seeds
            and self.pool_sizes == other.pool_sizes
            and len(self) == len(other)
            and all(a.equals(b) for a, b in zip(self, other))
        )


def easy_ensemble(d, n_subsets=10, ratio=AUTO, seed=0) -> EnsembleSets:
    """``n_subsets`` independent random under-samplings."""
    check_seed(seed)
    if n_subsets < 1:
        raise ValueError("n_subsets must be at least 1")
    seeds = tuple(derive_seed(seed, i) for i in range(n_subsets))
    subsets = tuple(RandomUnderSampler(ratio, s).fit_sample(d) for s in seeds)
    return EnsembleSets(subsets, seeds)


def balance_cascade(d, max_iter=10, classifier="knn", k=1, ratio=AUTO, seed=0,
                    svm_lambda=1e-2, svm_epochs=20) -> EnsembleSets:
    """Sequential balanced subsets that retire correctly classified majority rows.

    Each iteration takes the full minority class plus a uniform draw from the
    majority pool, trains ``classifier`` ('knn' with ``k`` neighbors, or
    'svm') on that subset and removes from the pool every drawn majority row
    it classifies correctly.  Stops after ``max_iter`` subsets or when the
    pool can no longer fill a subset.
    """
    check_seed(seed)
    ratio_value(ratio)
    if classifier not in ("knn", "svm"):
        raise ValueError(f"classifier must be 'knn' or 'svm', got {classifier!r}")
    stats = class_stats(d)
    labels = d.labels
    mins = np.flatnonzero(labels == stats.minority_label)
    pool = np.flatnonzero(labels == stats.majority_label)
    unbounded = ClassStats(stats.minority_label, stats.majority_label,
                           stats.n_minority, sys.maxsize)
    _, need = resolve_targets(unbounded, ratio, "under")
    subsets, seeds, sizes = [], [], [len(pool)]
    for i in range(max_iter):
        if len(pool) < need:
            break
        s = derive_seed(seed, i)
        rng = Xoshiro256(s)
        drawn = pool[np.asarray(rng.choice_indices(len(pool), need), dtype=np.int64)]
        result = kept_result(d, np.concatenate([mins, drawn]))
        if classifier == "knn":
            model = KNNClassifier(k).fit(result.dataset)
        else:
            model = linear_svm_fit(result.dataset, svm_lambda, svm_epochs,
                                   seed=derive_seed(s, 1))
        correct = model.predict(d.features[drawn]) == stats.majority_label
        pool = np.setdiff1d(pool, drawn[correct])
        subsets.append(result)
        seeds.append(s)
        sizes.append(len(pool))
    return EnsembleSets(tuple(subsets), tuple(seeds), tuple(sizes))
