"""Seeded resampling for imbalanced binary datasets.

Under-sampling, over-sampling (SMOTE family), SMOTE+cleaning combinations and
EasyEnsemble/BalanceCascade, all behind a ``fit`` / ``sample`` /
``fit_sample`` contract with bit-reproducible results for a given seed.
"""

from . import _backend
from .combine import SMOTEENN, SMOTETomek, smote_enn, smote_tomek
from .core import (
    AUTO,
    ClassStats,
    Dataset,
    ResampleResult,
    SyntheticOrigin,
    balancing_ratio,
    class_stats,
    resolve_targets,
    take_subset,
)
from .ensemble import EnsembleSets, balance_cascade, easy_ensemble
from .over_sampling import SMOTE, RandomOverSampler, random_over, smote
from .pipeline import Pipeline, fit_sample_chain
from .synthgen import make_imbalanced
from .under_sampling import (
    ClusterCentroids,
    CondensedNearestNeighbour,
    EditedNearestNeighbours,
    InstanceHardnessThreshold,
    NearMiss,
    NeighbourhoodCleaningRule,
    OneSidedSelection,
    RandomUnderSampler,
    TomekLinks,
)

__version__ = "0.1.0"

#: "compiled" when the Cython kernels are in use, "python" otherwise.
BACKEND = _backend.name

__all__ = [
    "AUTO", "BACKEND", "ClassStats", "ClusterCentroids", "CondensedNearestNeighbour",
    "Dataset", "EditedNearestNeighbours", "EnsembleSets", "InstanceHardnessThreshold",
    "NearMiss", "NeighbourhoodCleaningRule", "OneSidedSelection", "Pipeline",
    "RandomOverSampler", "RandomUnderSampler", "ResampleResult", "SMOTE", "SMOTEENN",
    "SMOTETomek", "SyntheticOrigin", "TomekLinks", "balance_cascade", "balancing_ratio",
    "class_stats", "easy_ensemble", "fit_sample_chain", "make_imbalanced", "random_over",
    "resolve_targets", "smote", "smote_enn", "smote_tomek", "take_subset",
]
