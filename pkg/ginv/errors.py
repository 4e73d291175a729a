"""Exceptions shared across the package."""

from pathlib import Path


class GinvError(Exception):
    """Base class of every error raised by this package"""


class DimensionMismatch(GinvError, ValueError):
    """Signals that the orders of two or more matrices disagree"""


class OverflowDetected(GinvError, ArithmeticError):
    """Signals that a computation produced a non-finite entry"""


class ConvergenceFailure(GinvError):
    """Signals that an underlying factorization did not converge"""


class NumericAmbiguity(GinvError):
    """Signals that a numeric decision sits on a tolerance boundary"""


class IllConditioned(GinvError):
    """Signals that a similarity transform is too ill-conditioned to trust"""


class KTooLarge(GinvError, ValueError):
    """Signals that a word length exceeds the enumeration bound"""


class ConditioningRejected(GinvError):
    """Signals that a generator drew a similarity above its conditioning bound"""


class GeneratorFailure(GinvError):
    """Signals that a generator could not meet its contract after bounded resampling"""


class PreconditionViolated(GinvError):
    """Signals that the hypothesis of a verifier does not hold for its inputs"""


class MalformedMatrix(GinvError, ValueError):
    """Signals that a matrix file could not be decoded.

    Attributes:
        path: The offending file, if any.
    """

    path: Path | None

    def __init__(self, message: str, path: Path | None = None) -> None:
        super().__init__(f"{path}: {message}" if path is not None else message)
        self.path = path
