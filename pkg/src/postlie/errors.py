"""Exception hierarchy.

The command line maps the three top-level families onto exit codes, so every
error raised by the library derives from exactly one of them.
"""


class PostLieError(Exception):
    pass


class ParseError(PostLieError, ValueError):
    """Malformed input document or expression."""


class MalformedRationalError(ParseError):
    pass


class UnknownLabelError(ParseError):
    pass


class DuplicateEntryError(ParseError):
    pass


class DocumentShapeError(ParseError):
    """Declared dimension, basis and entries of a document disagree."""


class PreconditionError(PostLieError, ValueError):
    """An operation was called on inputs outside its domain."""


class DimensionMismatchError(PreconditionError):
    pass


class NotSquareError(PreconditionError):
    pass


class NotNilpotentError(PreconditionError):
    pass


class JacobiError(PreconditionError):
    pass


class NotDerivationError(PreconditionError):
    pass


class NotHomomorphismError(PreconditionError):
    pass


class NotSubalgebraError(PreconditionError):
    pass


class NotDirectError(PreconditionError):
    pass


class NotSpanningError(PreconditionError):
    pass


class NotTwoStepNilpotentError(PreconditionError):
    pass


class NotPostLieError(PreconditionError):
    pass


class ParameterCapExceeded(PostLieError):
    """The free-parameter count of a search exceeds the configured cap."""

    def __init__(self, n_params: int, cap: int):
        super().__init__(f"{n_params} free parameters exceed cap {cap}")
        self.n_params = n_params
        self.cap = cap


class UnknownFixtureError(PostLieError, KeyError):
    def __str__(self) -> str:
        return f"unknown catalog name: {self.args[0]!r}"
