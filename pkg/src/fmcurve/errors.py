class FMCurveError(ValueError):
    """Base class for all library errors."""


class DimensionMismatchError(FMCurveError):
    pass


class PreconditionError(FMCurveError):
    pass


class ShapeError(FMCurveError):
    pass


class GenusMismatchError(FMCurveError):
    pass
