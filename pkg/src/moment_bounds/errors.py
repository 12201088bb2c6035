from typing import Any, Dict, Optional


class BoundsError(Exception):
    """Raised when an input violates the hypothesis of a bound."""
    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.context = context or {}


# SAMPLES
class InvalidWeights(BoundsError):
    """Negative weights, length mismatch, or a sum away from 1."""


class ValueOutOfSupport(BoundsError):
    """A sample value lies outside the declared support interval."""


# MOMENT INEQUALITIES
class MeanOutOfSupport(BoundsError):
    pass


class DegenerateMean(BoundsError):
    """Mean sits on an endpoint while the variance is positive."""


class ZeroVariance(BoundsError):
    pass


class VarianceInfeasible(BoundsError):
    pass


class InconsistentMoments(BoundsError):
    pass


class EvenN(BoundsError):
    pass


class ZeroFourthMoment(BoundsError):
    pass


class NonpositiveSupport(BoundsError):
    pass


class BoundOverflow(BoundsError):
    """Bound value exceeds the float range."""


# MATRICES
class NonNegligibleImaginaryTrace(BoundsError):
    pass


class NotHermitian(BoundsError):
    pass


class InvalidFunctional(BoundsError):
    pass


class NoConvergence(BoundsError):
    pass


class OrderTooSmall(BoundsError):
    """Matrix order (or sample size) below what a formula needs."""


class NonpositiveDenominator(BoundsError):
    pass


class NegativeDiscriminant(BoundsError):
    pass


# POLYNOMIALS
class NotMonic(BoundsError):
    pass


class DegreeTooSmall(BoundsError):
    pass


class NotRealRootFeasible(BoundsError):
    """Coefficients certify that not all roots are real."""


# INPUT
class InputFormatError(BoundsError):
    pass
