"""Exception hierarchy shared by every sampler."""


class ResamplingError(ValueError):
    """Base class for data or configuration errors raised by the engine."""


class ClassCountError(ResamplingError):
    """The dataset does not hold exactly two distinct labels."""


class RatioError(ResamplingError):
    """A target balancing ratio lies outside (0, 1]."""


class DimensionError(ResamplingError):
    """Two points (or matrices) have incompatible dimensionality."""


class NeighborCountError(ResamplingError):
    """More neighbors were requested than there are eligible rows."""


class ClusterError(ResamplingError):
    """k-means was asked for more clusters than distinct points."""


class DegenerateInputError(ResamplingError):
    """The input offers no eligible seed rows for the requested method."""


class WeightError(ResamplingError):
    """Invalid class weights passed to the synthetic generator."""


class ParseError(ResamplingError):
    """A CSV cell could not be parsed.

    ``row`` and ``column`` are 1-based; ``row`` counts data rows (the header
    is not counted) and ``column`` counts cells from the left.
    """

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class ShapeError(ResamplingError):
    """A CSV file is empty or not rectangular."""


class StageError(ResamplingError):
    """A pipeline stage failed; ``stage`` is its 0-based position."""

    def __init__(self, stage, error):
        super().__init__(f"stage {stage} ({type(error).__name__}): {error}")
        self.stage = stage
        self.error = error
