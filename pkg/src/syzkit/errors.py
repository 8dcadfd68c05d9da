"""Error types shared across the package."""


class SyzkitError(Exception):
    """Base class for all package errors."""


class ParseError(SyzkitError):
    """Raised on malformed input text; carries a 1-based line and column."""

    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class PreconditionError(SyzkitError):
    """Raised when an operation's stated precondition is violated."""


class SkeletonError(SyzkitError):
    """Raised when a symbolic syzygy prediction contradicts the computed kernel."""
