"""
Exception hierarchy.

Every error raised on purpose by the package derives from SuperfastQftError;
argument-style errors also derive from ValueError.
"""

from typing import Optional


class SuperfastQftError(Exception):
    """Base class for all package errors."""


class SizeLimitError(SuperfastQftError, ValueError):
    """A qubit count, vector length or dense cap is out of range."""


class CutRangeError(SuperfastQftError, ValueError):
    """A bipartition cut j is outside 1..n-1."""


class BoundDomainError(SuperfastQftError, ValueError):
    """The Schmidt-decay bound is only defined for k >= 2."""


class SpectrumValidationError(SuperfastQftError, ValueError):
    """A Schmidt spectrum is not descending, negative or not normalized."""


class MalformedLayerError(SuperfastQftError, ValueError):
    """A gate layer cannot be folded into a staircase network."""


class SiteMismatchError(SuperfastQftError, ValueError):
    """Two chains that must be combined have different site counts."""


class FunctionSpecError(SuperfastQftError, ValueError):
    """A function specification has invalid parameters or syntax."""


class UnsupportedFunctionError(SuperfastQftError):
    """No encoder exists for the requested function at this size."""


class SerializationError(SuperfastQftError, ValueError):
    """A serialized chain has a bad header or truncated payload."""


class NumericalError(SuperfastQftError, ArithmeticError):
    """
    A numerical routine failed to converge.

    Args:
        message: Error description.
        attempts: Number of attempts made before giving up.
    """

    def __init__(self, message: str, attempts: Optional[int] = None):
        self.attempts = attempts
        if attempts is not None:
            message = f"{message} (after {attempts} attempts)"
        super().__init__(message)
