import itertools

import numpy as np
import pytest

from rebalance import _backend
from rebalance.core import Dataset
from rebalance.exceptions import ClassCountError, ClusterError, NeighborCountError
from rebalance.learners import (
    KNNClassifier,
    kmeans_fit,
    knn_loo_true_class_proba,
    linear_svm_fit,
)
from rebalance.synthgen import make_imbalanced

F1_MAJORITY = [0.4, 2.0, 3.0, 4.0]


def exhaustive_two_means(points):
    """Minimum-SSE 2-partition by enumerating every split."""
    pts = np.asarray(points, dtype=float)
    best = None
    for mask in itertools.product([0, 1], repeat=len(pts)):
        mask = np.array(mask, dtype=bool)
        if mask.all() or not mask.any():
            continue
        a, b = pts[mask], pts[~mask]
        sse = ((a - a.mean()) ** 2).sum() + ((b - b.mean()) ** 2).sum()
        if best is None or sse < best[0] - 1e-12:
            best = (sse, sorted([a.mean(), b.mean()]))
    return best


def separable_blobs(seed=7):
    """Centers (-2, 0) and (+2, 0), sigma 0.3, 50 points each."""
    d = make_imbalanced(100, 2, [0.5, 0.5], class_sep=2.0, sigma=0.3, seed=seed)
    c = np.sqrt(0.5)
    rot = np.array([[c, c], [-c, c]])  # maps (1, 1)/sqrt(2) onto (1, 0)
    return Dataset(d.features @ rot.T, d.labels)


class TestKMeans:
    def test_global_optimum_on_f1_majority(self):
        sse, centers = exhaustive_two_means(F1_MAJORITY)
        assert sse == pytest.approx(1.78)
        assert centers == pytest.approx([1.2, 3.5])
        model = kmeans_fit(F1_MAJORITY, 2, seed=0, n_init=10)
        assert sorted(model.centroids.ravel()) == pytest.approx(centers, abs=1e-12)
        assert model.inertia == pytest.approx(sse, abs=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_k_equals_n(self, seed):
        pts = np.random.default_rng(seed).normal(size=(6, 2))
        model = kmeans_fit(pts, 6, seed=seed)
        assert model.inertia == 0.0
        got = sorted(map(tuple, model.centroids))
        assert got == sorted(map(tuple, pts))

    def test_k_one_is_mean(self):
        pts = np.random.default_rng(0).normal(size=(20, 3))
        model = kmeans_fit(pts, 1)
        assert model.centroids[0] == pytest.approx(pts.mean(axis=0))

    def test_too_many_clusters(self):
        with pytest.raises(ClusterError):
            kmeans_fit([1.0, 1.0, 2.0], 3)

    @pytest.mark.parametrize("seed", range(10))
    def test_inertia_non_increasing(self, seed):
        pts = np.random.default_rng(seed).normal(size=(80, 2))
        model = kmeans_fit(pts, 5, seed=seed, n_init=1)
        h = model.inertia_history
        assert all(b <= a * (1 + 1e-12) for a, b in zip(h, h[1:]))

    def test_deterministic(self):
        pts = np.random.default_rng(2).normal(size=(50, 2))
        a, b = kmeans_fit(pts, 4, seed=3), kmeans_fit(pts, 4, seed=3)
        assert a.centroids.tobytes() == b.centroids.tobytes()


class TestKnnProba:
    def test_f1_values(self, f1):
        p = knn_loo_true_class_proba(f1, 3)
        assert p[2] == pytest.approx(1 / 3)
        assert p[3] == pytest.approx(2 / 3)

    def test_single_class(self):
        d = Dataset(np.arange(5.0), ["x"] * 5)
        assert knn_loo_true_class_proba(d, 2).tolist() == [1.0] * 5

    def test_values_on_grid(self):
        rng = np.random.default_rng(0)
        d = Dataset(rng.normal(size=(60, 2)), rng.integers(0, 2, 60))
        p = knn_loo_true_class_proba(d, 5)
        assert set(np.round(p * 5, 12)) <= {0.0, 1.0, 2.0, 3.0, 4.0, 5.0}

    def test_k_too_large(self, f1):
        with pytest.raises(NeighborCountError):
            knn_loo_true_class_proba(f1, 6)


class TestKNNClassifier:
    def test_training_points_recovered_with_k1(self, f1):
        clf = KNNClassifier(1).fit(f1)
        assert clf.predict(f1.features).tolist() == f1.labels.tolist()

    def test_vote_tie_uses_nearest(self):
        d = Dataset([0.0, 1.0], ["a", "b"])
        assert KNNClassifier(2).fit(d).predict([[0.9]]).tolist() == ["b"]


class TestLinearSvm:
    def test_separable_blobs_accuracy(self):
        d = separable_blobs()
        model = linear_svm_fit(d, seed=7)
        acc = (model.predict(d.features) == d.labels).mean()
        assert acc >= 0.95

    def test_decision_codomain_and_bias(self):
        d = separable_blobs()
        model = linear_svm_fit(d, seed=1)
        assert set(model.predict_sign(d.features).tolist()) <= {-1, 1}
        assert model.decision_function(np.zeros(2))[0] == model.bias

    def test_deterministic(self):
        d = make_imbalanced(200, 4, [0.3, 0.7], class_sep=0.5, seed=3)
        a, b = linear_svm_fit(d, seed=5), linear_svm_fit(d, seed=5)
        assert a.weights.tobytes() == b.weights.tobytes()
        assert a.bias == b.bias
        assert a.support_indices.tolist() == b.support_indices.tolist()
        assert len(a.support_indices) > 0

    @pytest.mark.skipif(_backend.compiled is None, reason="compiled kernels not built")
    def test_backends_bit_identical(self):
        d = make_imbalanced(300, 5, [0.3, 0.7], class_sep=0.5, seed=8)
        a = linear_svm_fit(d, seed=2, backend="compiled")
        b = linear_svm_fit(d, seed=2, backend="python")
        assert a.weights.tobytes() == b.weights.tobytes()
        assert a.bias == b.bias

    def test_single_class(self):
        with pytest.raises(ClassCountError):
            linear_svm_fit(Dataset(np.arange(4.0), [1] * 4))
