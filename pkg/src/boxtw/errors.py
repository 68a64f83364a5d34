"""Exception types shared across the package."""

from __future__ import annotations


class BoxTWError(Exception):
    """Base class for all package errors."""


class ParseError(BoxTWError, ValueError):
    """Malformed input file. ``line`` is 1-based, or None when not line-specific."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LimitError(BoxTWError):
    """An exhaustive search was asked to run beyond its configured bound."""


class InvalidDecompositionError(BoxTWError, ValueError):
    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class PreconditionError(BoxTWError, ValueError):
    """A class-specific precondition failed; ``witness`` shows why."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)
