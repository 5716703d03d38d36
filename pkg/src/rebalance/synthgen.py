"""Seeded two-blob generator for imbalanced binary datasets."""

from __future__ import annotations

import math

import numpy as np

from .core import Dataset
from .exceptions import WeightError
from .rng import Xoshiro256


def make_imbalanced(n_samples, n_features, weights=(0.1, 0.9), class_sep=2.0,
                    sigma=1.0, seed=0, labels=(0, 1)) -> Dataset:
    """Two isotropic Gaussian blobs, minority rows first.

    The minority class (``labels[0]``) has ``round(weights[0] * n_samples)``
    rows centered at ``-(class_sep / sqrt(n_features)) * (1, ..., 1)``; the
    majority class fills the rest around the opposite point.  Normal deviates
    come from the package's portable generator.
    """
    if len(weights) != 2:
        raise WeightError("weights must hold exactly two values")
    w_min, w_maj = (float(w) for w in weights)
    if abs(w_min + w_maj - 1.0) > 1e-9 or not 0.0 < w_min <= w_maj:
        raise WeightError(f"weights must be 0 < w_min <= w_maj summing to 1, got {weights}")
    if n_samples < 2 or n_features < 1:
        raise ValueError("need n_samples >= 2 and n_features >= 1")
    n_min = math.floor(w_min * n_samples + 0.5)
    n_maj = n_samples - n_min
    rng = Xoshiro256(seed)
    noise = np.array(rng.normals(n_samples * n_features)).reshape(n_samples, n_features)
    offset = class_sep / math.sqrt(n_features)
    center = np.concatenate([np.full(n_min, -offset), np.full(n_maj, offset)])
    X = noise * sigma + center[:, None]
    y = np.array([labels[0]] * n_min + [labels[1]] * n_maj)
    return Dataset(X, y)
