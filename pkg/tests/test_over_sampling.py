import numpy as np
import pytest

from rebalance.core import Dataset, class_stats, resolve_targets
from rebalance.exceptions import DegenerateInputError, DimensionError, NeighborCountError
from rebalance.over_sampling import (
    SMOTE,
    DangerTag,
    classify_danger,
    interpolate,
    random_over,
    smote,
)
from rebalance.synthgen import make_imbalanced

from conftest import random_dataset

KINDS = ["regular", "borderline1", "borderline2", "svm"]


def overlapping(seed=0, n=200):
    return make_imbalanced(n, 3, [0.2, 0.8], class_sep=0.6, seed=seed)


def assert_reconstructs(d, r, rel=1e-12):
    rebuilt = r.reconstruct(d)
    new = r.dataset.features[r.n_kept:]
    scale = 1.0 + np.abs(d.features).max()
    assert np.all(np.abs(rebuilt - new) <= rel * scale)


class TestInterpolate:
    def test_formula(self):
        assert interpolate([0.0], [1.0], 0.25).tolist() == [0.25]

    def test_endpoints(self):
        a, b = np.array([1.5, -2.0]), np.array([3.0, 7.0])
        assert interpolate(a, b, 0.0).tolist() == a.tolist()
        assert interpolate(a, b, 1.0).tolist() == b.tolist()

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            interpolate([0.0, 1.0], [1.0], 0.5)


class TestRandomOver:
    def test_f1(self, f1):
        r = random_over(f1, seed=3)
        s = class_stats(r.dataset)
        assert (s.n_minority, s.n_majority) == (4, 4)
        originals = {tuple(f1.features[i]) for i in (0, 1)}
        for row in r.dataset.features[6:]:
            assert tuple(row) in originals
        assert all(o.u == 0.0 and o.seed_index == o.neighbor_index for o in r.synthetic)

    def test_balanced_identity(self):
        d = Dataset(np.arange(4.0), list("aabb"))
        r = random_over(d)
        assert r.dataset.equals(d) and r.synthetic == ()


class TestDanger:
    def test_f1(self, f1):
        tags = classify_danger(f1, 3)
        assert tags == {0: DangerTag.DANGER, 1: DangerTag.DANGER}

    def test_safe_and_noise(self):
        d = Dataset([0.0, 0.1, 0.2, 5.0, 5.1, 5.2, 5.3, 5.15], list("aaabbbba"))
        tags = classify_danger(d, 2)
        assert tags[0] == DangerTag.SAFE
        assert tags[7] == DangerTag.NOISE

    def test_m_too_large(self, f1):
        with pytest.raises(NeighborCountError):
            classify_danger(f1, 6)


class TestSmote:
    @pytest.mark.parametrize("kind", KINDS)
    def test_counts_and_majority_untouched(self, kind):
        d = overlapping()
        r = smote(d, SMOTE(kind=kind, seed=4))
        s = class_stats(r.dataset)
        assert s.n_minority == s.n_majority == 160
        maj = d.labels == 1
        out_maj = r.dataset.labels == 1
        assert r.dataset.features[out_maj].tobytes() == d.features[maj].tobytes()

    @pytest.mark.parametrize("kind", KINDS)
    def test_reconstruction(self, kind):
        d = overlapping(1)
        r = smote(d, SMOTE(kind=kind, seed=9))
        assert_reconstructs(d, r)

    def test_regular_uses_minority_neighbors(self):
        d = overlapping(2)
        r = smote(d, SMOTE(seed=1))
        assert all(d.labels[o.neighbor_index] == 0 for o in r.synthetic)
        assert all(0.0 <= o.u < 1.0 for o in r.synthetic)

    def test_borderline_seeds_are_danger(self):
        d = overlapping(3)
        tags = classify_danger(d, 10)
        r = smote(d, SMOTE(kind="borderline1", seed=1))
        assert all(tags[o.seed_index] == DangerTag.DANGER for o in r.synthetic)

    def test_borderline2_majority_neighbors_short_step(self):
        d = overlapping(4)
        r = smote(d, SMOTE(kind="borderline2", seed=1))
        towards_majority = [o for o in r.synthetic if d.labels[o.neighbor_index] == 1]
        assert towards_majority
        assert all(0.0 <= o.u <= 0.5 for o in towards_majority)

    def test_svm_seeds_are_support_vectors(self):
        d = overlapping(5)
        sampler = SMOTE(kind="svm", seed=2).fit(d)
        r = sampler.sample(d)
        svs = set(sampler._fitted[1]["svm"].support_indices.tolist())
        assert {o.seed_index for o in r.synthetic} <= svs
        assert all(-1.0 < o.u < 1.0 for o in r.synthetic)

    def test_f1_single_neighbor(self, f1):
        # ratio 0.75 -> one synthetic; k=1 forces the neighbor of row 0 to be row 1
        for seed in range(50):
            r = smote(f1, SMOTE(ratio=0.75, k_neighbors=1, seed=seed))
            (o,) = r.synthetic
            if o.seed_index == 0:
                assert o.neighbor_index == 1
                assert r.dataset.features[6, 0] == o.u
                break
        else:
            pytest.fail("no seed picked row 0")

    def test_general_ratio(self):
        d = overlapping(6)
        r = smote(d, SMOTE(ratio=0.6, seed=0))
        assert class_stats(r.dataset).n_minority == resolve_targets(class_stats(d), 0.6, "over")[0]

    def test_borderline_without_danger_rows(self):
        d = Dataset([0.0, 0.1, 0.2, 10.0, 10.1, 10.2, 10.3], list("aaabbbb"))
        with pytest.raises(DegenerateInputError):
            smote(d, SMOTE(kind="borderline1", k_neighbors=1, m_neighbors=2))

    def test_svm_without_support_vectors(self):
        d = Dataset([-10.0, -10.1, -10.2, 10.0, 10.1, 10.2, 10.3], list("aaabbbb"))
        with pytest.raises(DegenerateInputError):
            smote(d, SMOTE(kind="svm", k_neighbors=1, m_neighbors=2))

    def test_k_too_large(self, f1):
        with pytest.raises(NeighborCountError):
            smote(f1, SMOTE(k_neighbors=2))

    def test_one_minority_row(self):
        with pytest.raises(DegenerateInputError):
            smote(Dataset([0.0, 1.0, 2.0], list("abb")), SMOTE(k_neighbors=1))

    @pytest.mark.parametrize("kind", KINDS)
    def test_deterministic(self, kind):
        d = overlapping(7)
        a = smote(d, SMOTE(kind=kind, seed=11))
        b = smote(d, SMOTE(kind=kind, seed=11))
        c = smote(d, SMOTE(kind=kind, seed=12))
        assert a.equals(b)
        assert not a.equals(c)

    def test_string_labels(self):
        d = random_dataset(np.random.default_rng(0), 10, 30, 2)
        r = smote(d, SMOTE(seed=0))
        assert set(r.dataset.labels[d.n_samples:].tolist()) == {"a"}
