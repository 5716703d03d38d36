"""Small deterministic learners used inside samplers.

* Lloyd's k-means with k-means++ seeding (cluster-centroid under-sampling),
* leave-one-out k-NN class probabilities (instance hardness) and a k-NN
  classifier (BalanceCascade),
* a Pegasos linear SVM (SVM-SMOTE, BalanceCascade option).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import Dataset, class_stats
from .exceptions import ClassCountError, ClusterError
from .neighbors import kneighbors
from .rng import Xoshiro256

SV_TOLERANCE = 1e-3


def _sq_distances(X, C):
    s = np.zeros((X.shape[0], C.shape[0]))
    for j in range(X.shape[1]):
        diff = X[:, j, None] - C[None, :, j]
        s = s + diff * diff
    return s


@dataclass(frozen=True, eq=False)
class KMeansModel:
    """Fitted k-means solution.

    Attributes
    ----------
    centroids : ndarray of shape (k, n_features)
    inertia : float
        Sum of squared distances of points to their assigned centroid.
    assignments : ndarray of shape (n_points,)
    inertia_history : tuple of float
        Inertia after every assignment step of the winning restart.
    """

    centroids: np.ndarray
    inertia: float
    assignments: np.ndarray
    inertia_history: tuple


def _kmeans_plusplus(X, k, rng):
    n = X.shape[0]
    chosen = [rng.randbelow(n)]
    d2 = _sq_distances(X, X[chosen])[:, 0]
    for _ in range(1, k):
        cum = np.cumsum(d2)
        r = rng.random() * cum[-1]
        i = int(np.searchsorted(cum, r, side="right"))
        i = min(i, n - 1)
        while d2[i] == 0.0:  # guard against landing on an already-chosen point
            i = (i + 1) % n
        chosen.append(i)
        d2 = np.minimum(d2, _sq_distances(X, X[i:i + 1])[:, 0])
    return X[chosen].copy()


def _lloyd(X, C, max_iter, tol):
    d2 = _sq_distances(X, C)
    labels = d2.argmin(axis=1)
    inertia = float(d2[np.arange(len(X)), labels].sum())
    history = [inertia]
    for _ in range(max_iter):
        C_new = C.copy()
        for c in range(C.shape[0]):
            members = labels == c
            if members.any():
                C_new[c] = X[members].mean(axis=0)
        d2 = _sq_distances(X, C_new)
        labels_new = d2.argmin(axis=1)
        inertia_new = float(d2[np.arange(len(X)), labels_new].sum())
        history.append(inertia_new)
        stable = np.array_equal(labels_new, labels)
        small = inertia - inertia_new <= tol * inertia
        C, labels, inertia = C_new, labels_new, inertia_new
        if stable or small:
            break
    return C, labels, inertia, history


def kmeans_fit(points, k, seed=0, n_init=10, max_iter=300, tol=1e-6) -> KMeansModel:
    """Best of ``n_init`` k-means++-seeded Lloyd runs (lowest inertia, first on ties)."""
    X = np.asarray(points, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    n_distinct = len(np.unique(X, axis=0)) if len(X) else 0
    if k < 1 or k > n_distinct:
        raise ClusterError(f"k={k} clusters requested for {n_distinct} distinct points")
    rng = Xoshiro256(seed)
    best = None
    for _ in range(n_init):
        C = _kmeans_plusplus(X, k, rng)
        C, labels, inertia, history = _lloyd(X, C, max_iter, tol)
        if best is None or inertia < best.inertia:
            best = KMeansModel(C, inertia, labels, tuple(history))
    best.centroids.setflags(write=False)
    return best


def knn_loo_true_class_counts(dataset: Dataset, k: int, *, backend=None):
    """Per row, how many of its k leave-one-out neighbors share its label."""
    n = dataset.n_samples
    idx, _ = kneighbors(
        dataset.features, dataset.features, k, np.arange(n), backend=backend
    )
    labels = dataset.labels
    return (labels[idx] == labels[:, None]).sum(axis=1)


def knn_loo_true_class_proba(dataset: Dataset, k: int, *, backend=None) -> np.ndarray:
    """Fraction of each row's k leave-one-out nearest neighbors sharing its label."""
    return knn_loo_true_class_counts(dataset, k, backend=backend) / k


class KNNClassifier:
    """Majority vote of the k nearest training rows.

    Vote ties go to the label of the nearest neighbor.  Training rows are not
    excluded when they are themselves queried.
    """

    def __init__(self, k=1):
        self.k = k

    def fit(self, dataset: Dataset):
        self.train_ = dataset
        return self

    def predict(self, X, *, backend=None):
        X = np.asarray(X, dtype=np.float64).reshape(-1, self.train_.n_features)
        idx, _ = kneighbors(self.train_.features, X, self.k, backend=backend)
        votes = self.train_.labels[idx]
        out = []
        for row in votes:
            values, counts = np.unique(row, return_counts=True)
            top = counts.max()
            if (counts == top).sum() == 1:
                out.append(values[counts.argmax()])
            else:
                out.append(row[0])
        return np.array(out, dtype=self.train_.labels.dtype)


@dataclass(frozen=True, eq=False)
class LinearSvmModel:
    """Linear decision function ``w . x + b``; minority is the +1 class."""

    weights: np.ndarray
    bias: float
    support_indices: np.ndarray
    minority_label: object
    majority_label: object

    def decision_function(self, X):
        X = np.asarray(X, dtype=np.float64).reshape(-1, len(self.weights))
        return X @ self.weights + self.bias

    def predict_sign(self, X):
        return np.where(self.decision_function(X) >= 0.0, 1, -1)

    def predict(self, X):
        signs = self.predict_sign(X)
        return np.where(signs > 0, self.minority_label, self.majority_label)


def linear_svm_fit(dataset: Dataset, lam=1e-2, epochs=20, seed=0,
                   sv_tolerance=SV_TOLERANCE, *, backend=None) -> LinearSvmModel:
    """Pegasos stochastic sub-gradient training of a linear SVM.

    The bias is learned as the weight of a constant feature.  Each epoch
    visits every row once, in an order drawn from ``seed``.  Support vectors
    are the rows with ``y * (w . x + b) <= 1 + sv_tolerance``.
    """
    try:
        stats = class_stats(dataset)
    except ClassCountError:
        raise ClassCountError("linear SVM needs exactly two classes") from None
    if lam <= 0 or epochs < 1:
        raise ValueError("lam must be positive and epochs at least 1")
    n = dataset.n_samples
    y = np.where(dataset.labels == stats.minority_label, 1.0, -1.0)
    Xa = np.ascontiguousarray(np.hstack([dataset.features, np.ones((n, 1))]))
    rng = Xoshiro256(seed)
    order = np.array(
        [i for _ in range(epochs) for i in rng.permutation(n)], dtype=np.int64
    )
    w = np.zeros(Xa.shape[1])
    _backend.get(backend).pegasos_train(Xa, y, order, float(lam), w)
    weights, bias = w[:-1].copy(), float(w[-1])
    margins = y * (dataset.features @ weights + bias)
    support = np.flatnonzero(margins <= 1.0 + sv_tolerance)
    weights.setflags(write=False)
    return LinearSvmModel(
        weights, bias, support, stats.minority_label, stats.majority_label
    )
