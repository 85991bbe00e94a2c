"""Exception taxonomy shared by the whole package.

ParseError (and its ValidationError subclass) map to CLI exit code 2,
DomainError to exit code 1.
"""


class SatkitError(Exception):
    """Base class for all errors raised by satkit."""


class ParseError(SatkitError):
    """Malformed input text.  ``position`` is a character offset when known."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ValidationError(ParseError):
    """Structurally well-formed input that violates a diagram invariant."""


class DomainError(SatkitError):
    """Operation precondition violated (bad component, wrong winding, ...)."""
