"""SMOTE followed by a cleaning under-sampler."""

from __future__ import annotations

import copy

from .core import BaseSampler, compose_results
from .over_sampling import SMOTE
from .under_sampling import ALL, BOTH, EditedNearestNeighbours, TomekLinks


class _SmoteThenClean(BaseSampler):
    def __init__(self, smote=None):
        self.smote = smote if smote is not None else SMOTE()

    @property
    def seed(self):
        return self.smote.seed

    @seed.setter
    def seed(self, value):
        # copy so a re-seeded combiner never mutates the caller's SMOTE
        self.smote = self.smote.with_seed(value)

    def _cleaner(self):
        raise NotImplementedError

    def _fit(self, dataset):
        first = copy.copy(self.smote).fit_sample(dataset)
        second = self._cleaner().fit_sample(first.dataset)
        return compose_results(first, second, stage=1)

    def _sample(self, dataset, result):
        return result


class SMOTETomek(_SmoteThenClean):
    """SMOTE, then removal of both members of every Tomek link."""

    def _cleaner(self):
        return TomekLinks(remove=BOTH)


class SMOTEENN(_SmoteThenClean):
    """SMOTE, then ENN over all classes (synthetics included)."""

    def __init__(self, smote=None, k=3):
        super().__init__(smote)
        self.k = k

    def _cleaner(self):
        return EditedNearestNeighbours(self.k, scope=ALL)


def smote_tomek(d, smote_cfg=None):
    return SMOTETomek(smote_cfg).fit_sample(d)


def smote_enn(d, smote_cfg=None, k=3):
    return SMOTEENN(smote_cfg, k).fit_sample(d)
