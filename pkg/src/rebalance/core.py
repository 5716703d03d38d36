"""Data model, class statistics and the sampler contract."""

from __future__ import annotations

import copy
import hashlib
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .exceptions import ClassCountError, RatioError
from .rng import check_seed

AUTO = "auto"

# Absorbs representation error in ratio arithmetic, e.g. 3 / 0.3 -> 10.000000000000002.
_RATIO_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class Dataset:
    """Dense real-valued feature matrix plus one label per row.

    Both arrays are copied on construction and made read-only.
    """

    features: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        features = np.array(self.features, dtype=np.float64)
        if features.ndim == 1:
            features = features.reshape(-1, 1)
        if features.ndim != 2:
            raise ValueError(f"features must be 2-D, got shape {features.shape}")
        if features.shape[1] < 1:
            raise ValueError("features must have at least one column")
        if not np.all(np.isfinite(features)):
            raise ValueError("features must be finite (no NaN or Inf)")
        labels = np.array(self.labels)
        if labels.ndim != 1:
            labels = labels.reshape(-1)
        if labels.shape[0] != features.shape[0]:
            raise ValueError(
                f"{features.shape[0]} feature rows but {labels.shape[0]} labels"
            )
        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def __len__(self):
        return self.n_samples

    def equals(self, other: "Dataset") -> bool:
        """Bit-exact equality of features and labels."""
        return (
            self.features.shape == other.features.shape
            and self.features.tobytes() == other.features.tobytes()
            and self.labels.tolist() == other.labels.tolist()
        )

    def fingerprint(self) -> str:
        h = hashlib.blake2b(digest_size=16)
        h.update(repr(self.features.shape).encode())
        h.update(self.features.tobytes())
        h.update(repr(self.labels.tolist()).encode())
        return h.hexdigest()


class ClassStats(NamedTuple):
    minority_label: object
    majority_label: object
    n_minority: int
    n_majority: int


class SyntheticOrigin(NamedTuple):
    """Where a generated row came from.

    The row equals ``seed + u * (neighbor - seed)`` where ``seed`` and
    ``neighbor`` are rows of the original input.  When ``local`` is true the
    indices instead refer to the input of pipeline stage ``stage`` (the source
    rows were themselves synthetic).  Cluster centroids carry ``None`` indices.
    """

    seed_index: Optional[int]
    neighbor_index: Optional[int]
    u: Optional[float]
    stage: int = 0
    local: bool = False


@dataclass(frozen=True, eq=False)
class ResampleResult:
    """A resampled dataset and the provenance of each of its rows.

    The first ``len(kept_indices)`` rows are original rows, ``kept_indices``
    giving their positions in the input; the remaining rows are synthetic and
    described by ``synthetic`` in the same order.
    """

    dataset: Dataset
    kept_indices: np.ndarray
    synthetic: tuple = ()

    def __post_init__(self):
        kept = np.asarray(self.kept_indices, dtype=np.int64).reshape(-1)
        kept.setflags(write=False)
        object.__setattr__(self, "kept_indices", kept)
        object.__setattr__(self, "synthetic", tuple(self.synthetic))
        if len(kept) + len(self.synthetic) != self.dataset.n_samples:
            raise ValueError("provenance does not cover every output row")

    @property
    def n_kept(self) -> int:
        return len(self.kept_indices)

    def equals(self, other: "ResampleResult") -> bool:
        return (
            self.dataset.equals(other.dataset)
            and self.kept_indices.tolist() == other.kept_indices.tolist()
            and self.synthetic == other.synthetic
        )

    def reconstruct(self, original: Dataset) -> np.ndarray:
        """Rebuild the interpolated synthetic rows from ``original``.

        Rows without traceable interpolation provenance are returned as NaN.
        """
        out = np.full((len(self.synthetic), original.n_features), np.nan)
        X = original.features
        for i, o in enumerate(self.synthetic):
            if o.seed_index is None or o.local:
                continue
            s = X[o.seed_index]
            out[i] = s + o.u * (X[o.neighbor_index] - s)
        return out


def class_stats(dataset: Dataset) -> ClassStats:
    """Minority/majority labels and counts; equal sizes go to label order."""
    values, counts = np.unique(dataset.labels, return_counts=True)
    if len(values) != 2:
        raise ClassCountError(
            f"expected exactly 2 distinct labels, found {len(values)}"
        )
    # np.unique sorts, so on a tie index 0 (the smaller label) is the minority
    lo = 0 if counts[0] <= counts[1] else 1
    hi = 1 - lo
    return ClassStats(
        _scalar(values[lo]), _scalar(values[hi]), int(counts[lo]), int(counts[hi])
    )


def _scalar(v):
    return v.item() if isinstance(v, np.generic) else v


def balancing_ratio(stats: ClassStats) -> float:
    """``n_minority / n_majority``."""
    if stats.n_majority < 1:
        raise ValueError("balancing ratio undefined without majority samples")
    return stats.n_minority / stats.n_majority


def ratio_value(ratio) -> float:
    """Validate a ratio value (``'auto'`` or a real in (0, 1]) as a float."""
    if isinstance(ratio, str):
        if ratio == AUTO:
            return 1.0
        try:
            ratio = float(ratio)
        except ValueError:
            raise RatioError(f"ratio must be 'auto' or a number, got {ratio!r}") from None
    if isinstance(ratio, bool):
        raise RatioError("ratio must be 'auto' or a number")
    r = float(ratio)
    if not (0.0 < r <= 1.0):
        raise RatioError(f"ratio must lie in (0, 1], got {ratio!r}")
    return r


def resolve_targets(stats: ClassStats, ratio, direction: str) -> tuple:
    """Target ``(n_minority, n_majority)`` for a resampling direction.

    Under-sampling rounds the majority target up and over-sampling rounds
    the minority target down, so neither overshoots exact balance.
    """
    r = ratio_value(ratio)
    n_min, n_maj = stats.n_minority, stats.n_majority
    if direction == "under":
        target = math.ceil(n_min / r - _RATIO_SLACK)
        return n_min, min(n_maj, max(target, n_min))
    if direction == "over":
        target = math.floor(r * n_maj + _RATIO_SLACK)
        return max(n_min, min(target, n_maj)), n_maj
    raise ValueError(f"direction must be 'under' or 'over', got {direction!r}")


def take_subset(dataset: Dataset, indices: Sequence[int]) -> Dataset:
    """Rows ``indices`` of ``dataset``, in the given order."""
    idx = np.asarray(indices, dtype=np.int64).reshape(-1)
    n = dataset.n_samples
    bad = (idx < 0) | (idx >= n)
    if bad.any():
        raise IndexError(f"row index {int(idx[bad][0])} out of range for {n} rows")
    return Dataset(dataset.features[idx], dataset.labels[idx])


def kept_result(dataset: Dataset, kept) -> ResampleResult:
    """Result that keeps rows ``kept`` (any order) in original order."""
    kept = np.sort(np.asarray(kept, dtype=np.int64))
    return ResampleResult(take_subset(dataset, kept), kept, ())


def appended_result(dataset: Dataset, new_rows, new_label, origins) -> ResampleResult:
    """Result keeping every input row and appending synthetic rows."""
    new_rows = np.asarray(new_rows, dtype=np.float64).reshape(-1, dataset.n_features)
    features = np.vstack([dataset.features, new_rows])
    labels = np.concatenate(
        [dataset.labels, np.full(len(new_rows), new_label, dtype=dataset.labels.dtype)]
    )
    return ResampleResult(
        Dataset(features, labels), np.arange(dataset.n_samples), tuple(origins)
    )


def compose_results(first: ResampleResult, second: ResampleResult, stage: int = 1):
    """Provenance of ``second`` (run on ``first.dataset``) w.r.t. the original input.

    ``stage`` tags synthetics created by ``second``.
    """
    n1 = first.n_kept
    kept, synthetic = [], []
    for j in second.kept_indices.tolist():
        if j < n1:
            if synthetic:
                raise ValueError("stage output interleaves original and synthetic rows")
            kept.append(int(first.kept_indices[j]))
        else:
            synthetic.append(first.synthetic[j - n1])
    for o in second.synthetic:
        synthetic.append(_remap_origin(o, first, stage))
    return ResampleResult(second.dataset, np.asarray(kept, dtype=np.int64), synthetic)


def _remap_origin(o: SyntheticOrigin, first: ResampleResult, stage: int):
    if o.seed_index is None:
        return SyntheticOrigin(None, None, None, stage, False)
    n1 = first.n_kept
    if o.local or o.seed_index >= n1 or o.neighbor_index >= n1:
        return SyntheticOrigin(o.seed_index, o.neighbor_index, o.u, stage, True)
    return SyntheticOrigin(
        int(first.kept_indices[o.seed_index]),
        int(first.kept_indices[o.neighbor_index]),
        o.u,
        stage,
        False,
    )


class NotFittedError(ValueError):
    """``sample`` was called before ``fit`` or on a different dataset."""


class BaseSampler:
    """Two-phase sampler contract.

    ``fit`` computes the parameters needed to resample a dataset (class
    statistics, target counts, neighbor tables) and caches them; ``sample``
    performs the resampling of that same dataset; ``fit_sample`` does both.
    Subclasses implement ``_fit`` and ``_sample``.
    """

    #: True for samplers driven to an exact target count.
    fixed = False
    #: True when the output depends on the seed.
    stochastic = True

    seed: int = 0

    def _fit(self, dataset):
        raise NotImplementedError

    def _sample(self, dataset, state):
        raise NotImplementedError

    def fit(self, dataset: Dataset):
        check_seed(self.seed)
        state = self._fit(dataset)
        self._fitted = (dataset.fingerprint(), state)
        return self

    def sample(self, dataset: Dataset) -> ResampleResult:
        fitted = getattr(self, "_fitted", None)
        if fitted is None:
            raise NotFittedError(f"{type(self).__name__} is not fitted")
        key, state = fitted
        if dataset.fingerprint() != key:
            raise NotFittedError("sample() must receive the dataset given to fit()")
        return self._sample(dataset, state)

    def fit_sample(self, dataset: Dataset) -> ResampleResult:
        return self.fit(dataset).sample(dataset)

    def with_seed(self, seed: int):
        """Unfitted copy of this sampler using ``seed``."""
        other = copy.copy(self)
        other.seed = check_seed(seed)
        other.__dict__.pop("_fitted", None)
        return other

    def get_params(self) -> dict:
        return {k: v for k, v in vars(self).items() if not k.startswith("_")}

    def __repr__(self):
        params = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({params})"
