"""Exception hierarchy."""


class SlopeGeoError(Exception):
    pass


class DomainError(SlopeGeoError, ValueError):
    """Point outside the chart domain of a surface."""


class ZeroVector(SlopeGeoError, ValueError):
    pass


class RangeError(SlopeGeoError, ValueError):
    """Scalar argument outside the admissible range (e.g. s >= 1/2, b >= 1/2)."""


class ConvexityViolation(SlopeGeoError, ValueError):
    """The slope metric is not strongly convex at the point (b >= 1/2)."""


class NonConvexLimacon(SlopeGeoError, ValueError):
    pass


class DegenerateDenominator(SlopeGeoError, ArithmeticError):
    pass


class DomainExit(SlopeGeoError):
    """Geodesic left the chart. Carries the partial trace."""

    def __init__(self, msg, trace=None):
        super().__init__(msg)
        self.trace = trace


class StepFailure(SlopeGeoError):
    def __init__(self, msg, trace=None):
        super().__init__(msg)
        self.trace = trace


class Unattainable(SlopeGeoError, ValueError):
    pass


class AmbiguousBranch(SlopeGeoError, ValueError):
    pass


class QuadratureFailure(SlopeGeoError, ArithmeticError):
    pass
