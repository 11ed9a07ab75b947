"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class QKError(Exception):
    """Base class for all errors raised by qk."""


class InputError(QKError, ValueError):
    """Malformed or inconsistent input data."""


class PreconditionError(QKError):
    """An operation was called on data that does not meet its precondition."""

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class CertificationError(PreconditionError):
    """A category could not be certified as an order (not Cauchy complete)."""


class ColimitMissing(PreconditionError):
    """A weighted colimit does not exist in the target category."""


class ConversionError(PreconditionError):
    """A functor could not be turned into a module morphism."""


class ResourceError(QKError):
    """An instance exceeds the configured size caps."""
