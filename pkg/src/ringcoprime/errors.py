"""Exception types raised across the package."""

from __future__ import annotations


class RingCoprimeError(Exception):
    """Base class for every error raised by ringcoprime."""


class InvalidInputError(RingCoprimeError, ValueError):
    """Parameters violate an operation's preconditions."""


class FieldSpecError(InvalidInputError):
    """A field descriptor could not be parsed."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)


class FieldDomainError(InvalidInputError):
    """A well-formed descriptor names something that is not a valid field."""


class ReducibleError(FieldDomainError):
    """A defining polynomial factors over the rationals."""


class ConvergenceError(InvalidInputError):
    """Arguments lie outside the convergence region of a product."""


class ResourceLimitError(RingCoprimeError):
    """A computation would exceed a configured size cap."""


class PrecisionError(RingCoprimeError):
    """The requested accuracy cannot be guaranteed in double precision."""
