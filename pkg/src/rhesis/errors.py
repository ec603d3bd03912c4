"""Exception types and warning categories shared across the package."""

from __future__ import annotations


class RhesisError(Exception):
    """Base class for data and format errors raised by this package."""


class ParseError(RhesisError):
    """Malformed CoNLL-U input (wrong column count, unreadable field)."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class StructuralError(RhesisError):
    """A sentence's head column does not describe a valid dependency tree."""


class FormatError(RhesisError):
    """Malformed gold, score-table, or configuration input."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class AlignmentError(RhesisError):
    """Gold rhesis text cannot be matched onto the parsed sentence."""


class OversizedTokenWarning(UserWarning):
    """A single token exceeds the span and is emitted as its own rhesis."""
