"""Exception hierarchy shared by all trajmine modules."""


class TrajmineError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgumentError(TrajmineError, ValueError):
    pass


class EmptyEncodingError(TrajmineError):
    """An anonymous region has no positive-area overlap with the grid."""


class PreconditionError(TrajmineError):
    """A concatenation step violates the item ordering or growth restriction."""


class SizeLimitError(TrajmineError):
    """Brute-force enumeration would exceed its configured candidate cap."""


class ParseError(TrajmineError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(TrajmineError):
    pass


class InfeasibleError(TrajmineError):
    """The requested k-anonymity / l-diversity cannot be met by the data."""
