"""Exception hierarchy shared across the package."""


class PivotCCError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInstanceError(PivotCCError, ValueError):
    """An input does not describe a valid clustering instance."""


class InvalidArgumentError(PivotCCError, ValueError):
    """An argument is outside the operation's domain."""


class SizeError(PivotCCError, ValueError):
    """An instance is too large for the requested exhaustive method."""


class ParseError(PivotCCError, ValueError):
    """Malformed serialized input. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceError(PivotCCError, MemoryError):
    """A requested structure exceeds the configured memory budget."""
