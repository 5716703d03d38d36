"""Sequential composition of samplers."""

from __future__ import annotations

from .core import BaseSampler, compose_results
from .exceptions import ResamplingError, StageError
from .rng import check_seed, derive_seed


class Pipeline(BaseSampler):
    """Apply samplers left to right, stage ``i`` seeded with ``derive_seed(seed, i)``.

    The final result's provenance refers to the pipeline input wherever the
    rows are traceable to it; synthetics built from earlier synthetics are
    tagged with their stage and local indices.
    """

    def __init__(self, stages, seed=0):
        stages = list(stages)
        if not stages:
            raise ValueError("a pipeline needs at least one stage")
        self.stages = stages
        self.seed = check_seed(seed)

    @property
    def stochastic(self):
        return any(s.stochastic for s in self.stages)

    def _fit(self, dataset):
        result = None
        current = dataset
        for i, stage in enumerate(self.stages):
            try:
                out = stage.with_seed(derive_seed(self.seed, i)).fit_sample(current)
            except ResamplingError as err:
                raise StageError(i, err) from err
            result = out if result is None else compose_results(result, out, stage=i)
            current = out.dataset
        return result

    def _sample(self, dataset, result):
        return result


def fit_sample_chain(chain, d, seed=0):
    return Pipeline(chain, seed).fit_sample(d)
