"""Exception hierarchy shared by every module."""

from __future__ import annotations


class IdemkitError(Exception):
    pass


class DegreeMismatch(IdemkitError, ValueError):
    pass


class CapExceeded(IdemkitError):
    """A configured size cap (closure, lattice, character table, subset search) was hit."""


class GroupParseError(IdemkitError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotPLocal(IdemkitError, ValueError):
    pass


class NotPPerfect(IdemkitError, ValueError):
    pass


class NonIntegerValues(IdemkitError, ValueError):
    pass


class InternalError(IdemkitError, RuntimeError):
    """Raised when a fact guaranteed by theory fails to hold; always a bug."""
