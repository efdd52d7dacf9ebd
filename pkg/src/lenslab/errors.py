"""Exception types shared across lenslab."""

from __future__ import annotations


class DomainError(ValueError):
    """A documented precondition does not hold for the given input."""


class SizeGuardError(DomainError):
    """A brute-force routine was asked to work beyond its size guard."""


class ParseError(ValueError):
    """Malformed text input; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
