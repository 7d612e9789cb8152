"""Exception hierarchy shared by every satkit module."""


class SatkitError(Exception):
    """Base class for all satkit errors."""


class ParseError(SatkitError, ValueError):
    """Malformed input text. Carries the offending line number when known."""

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.message = message


class PreconditionError(SatkitError, ValueError):
    """An operation was called on arguments violating its precondition."""


class NotACongruenceError(PreconditionError):
    pass


class SignatureMismatchError(PreconditionError):
    pass


class ResourceLimitError(SatkitError):
    """A size guard was tripped before an expensive enumeration."""
