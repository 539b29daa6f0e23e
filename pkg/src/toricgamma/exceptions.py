"""Exception hierarchy shared by all modules."""


class ToricError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(ToricError, ValueError):
    """Matrix or vector shapes do not fit the operation."""


class RankError(ToricError, ValueError):
    """Vectors expected to be linearly independent are not."""


class FanError(ToricError, ValueError):
    """The combinatorial structure of a fan is invalid or unsupported."""


class NotCompleteError(FanError):
    """The fan (or the input polytope) does not cover the whole space."""


class NonVertexError(FanError):
    """A generator lies in the convex hull of the others."""


class NonSimplicialError(FanError):
    """A maximal cone has more generators than the dimension."""


class PreconditionError(ToricError, ValueError):
    """A closed-form formula was called outside its hypotheses."""


class DatasetError(ToricError, ValueError):
    """Malformed or invalid dataset text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
