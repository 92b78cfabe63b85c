"""Exception types shared across the package."""


class XiLabError(Exception):
    """Base class for all package-specific errors."""


class DomainError(XiLabError, ValueError):
    """Argument outside the domain a routine supports."""


class PoleError(XiLabError, ValueError):
    """Evaluation requested exactly at a pole."""


class TruncationError(XiLabError, ArithmeticError):
    """No truncation point satisfies the requested error budget."""


class ConvergenceError(XiLabError, ArithmeticError):
    """An iteration failed to converge within its budget."""


class DerivativeVanishesError(ConvergenceError):
    """Newton step rejected because the derivative is numerically zero."""


class BoundaryTooCloseError(XiLabError, ArithmeticError):
    """A contour sample came too close to a zero of the tracked function.

    Carries the offending sample point so the caller can perturb the
    rectangle deterministically.
    """

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point
