"""Exception types raised across the package."""


class IntervalError(Exception):
    """Base class for errors raised by intervalmc."""


class InvalidProbabilityError(IntervalError, ValueError):
    """A probability argument fell outside its admissible range."""


class InvalidConstraintError(IntervalError, ValueError):
    """A quantile constraint violates 0 < q_lo < q_hi < 1."""


class NumericError(IntervalError, ArithmeticError):
    """A root finder or quadrature failed to reach its tolerance.

    ``residual`` carries the last achieved residual or error estimate.
    """

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class ResamplingCapError(IntervalError, RuntimeError):
    """A rejection loop exhausted its per-trial resampling cap."""
