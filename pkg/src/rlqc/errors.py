"""Exception types shared across the package.

Python's builtin NameError is reused for unknown registry lookups (for
example an unknown built-in gate-set name), so it is not redefined here.
"""


class RlqcError(Exception):
    """Base class for all package-specific errors."""


class DomainError(RlqcError, ValueError):
    """An argument is outside the domain an operation accepts."""


class ValidationError(RlqcError, ValueError):
    """A value fails a structural invariant (non-unitary matrix, shape
    mismatch, incompatible checkpoint, ...)."""


class ParseError(RlqcError, ValueError):
    """Malformed text input (gate-set file, matrix text, run config)."""


class StateError(RlqcError, RuntimeError):
    """An operation was called in a state that forbids it."""


class NumericsError(RlqcError, ArithmeticError):
    """A numeric computation produced non-finite values."""


class ResourceError(RlqcError, RuntimeError):
    """A guard against unbounded memory or compute was exceeded."""


class IntegrityError(RlqcError, RuntimeError):
    """A persisted artifact is corrupt or truncated."""
