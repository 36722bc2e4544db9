"""
Exception hierarchy. Everything derives from ValueError so callers that
only know about ValueError keep working.
"""


class GRSError(ValueError):
    """Base class for all grs3d errors."""


class ValidationError(GRSError):
    """A structural constraint or configuration invariant is violated."""


class SchemaError(GRSError):
    """Parameters are missing, unexpected or malformed."""


class DomainError(GRSError):
    """An operation was asked for outside its domain."""


class UnknownCaseError(GRSError):
    """Unknown theorem case or corollary identifier."""
