"""Exception hierarchy shared across the package."""


class MillerGoodError(Exception):
    """Base class for every error raised by this package."""


class DomainError(MillerGoodError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class NoTurningPointsError(MillerGoodError):
    """The energy admits no classical turning points."""


class IntegrandError(MillerGoodError, ArithmeticError):
    """The integrand produced a NaN or infinite sample."""


class AccuracyError(MillerGoodError):
    """An iterative procedure ran out of budget before reaching tolerance.

    The best available estimate is kept on ``best`` (and ``error`` when an
    error estimate exists) so callers can still inspect it.
    """

    def __init__(self, message, best=None, error=None):
        super().__init__(message)
        self.best = best
        self.error = error


class ClassicallyForbiddenError(MillerGoodError):
    """The momentum is imaginary somewhere inside the integration range."""


class NoRootError(MillerGoodError):
    """The quantization function does not change sign over the bracket."""


class WrongTopologyError(MillerGoodError):
    """The number of turning points does not match what the method needs."""


class TransformError(MillerGoodError):
    """A coordinate transform is not monotone on its domain."""


class QuantizationViolatedError(MillerGoodError):
    """A mapping built at an energy that does not satisfy the quantization rule."""


class NoBoundGroundStateError(MillerGoodError):
    """The coupling is past the point where the ground level reaches the barrier top."""


class InconsistentParametersError(MillerGoodError):
    """A (z, coupling) pair does not solve the quantization equation."""


class ResolutionError(MillerGoodError):
    """A finite-difference grid is too coarse for the requested derivatives."""
