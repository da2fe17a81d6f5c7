"""Exception hierarchy shared by every module."""


class ConstCurvError(Exception):
    """Base class for all package errors."""


class ResourceLimitError(ConstCurvError):
    """A configurable cap (simplex count, pivot count) was exceeded."""


class UnknownVertexError(ConstCurvError, KeyError):
    pass


class TieError(ConstCurvError, ValueError):
    """Two vertices of a common simplex carry the same function value."""


class MissingSimplexError(ConstCurvError, KeyError):
    pass


class NotATreeError(ConstCurvError, ValueError):
    pass


class ShareOutOfRangeError(ConstCurvError, ValueError):
    """Leaf peeling produced an edge share outside [0, 1]."""


class EmptyComplexError(ConstCurvError, ValueError):
    pass


class SizeError(ConstCurvError, ValueError):
    pass


class UnknownFixtureError(ConstCurvError, ValueError):
    pass


class ParseError(ConstCurvError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
