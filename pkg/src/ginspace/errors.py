"""Exception types shared across the package."""


class GinSpaceError(Exception):
    """Base class for all errors raised by ginspace."""


class DimensionError(GinSpaceError, ValueError):
    """Mismatched variable counts, widths or restriction depths."""


class DegreeError(GinSpaceError, ValueError):
    """A degree argument is out of range for the operation."""


class InvalidChangeError(GinSpaceError, ValueError):
    """A coordinate change is singular or malformed."""


class PreconditionError(GinSpaceError, ValueError):
    """An input violates a documented precondition (e.g. not strongly stable)."""


class ConsistencyError(GinSpaceError, ValueError):
    """Degree pieces that were supposed to form an ideal do not."""


class RandomnessError(GinSpaceError, RuntimeError):
    """Random sampling failed to produce a usable object."""


class NonGenericSampleError(GinSpaceError, RuntimeError):
    """Random coordinate changes never agreed on a single initial space."""

    def __init__(self, message, staircases=()):
        super().__init__(message)
        self.staircases = list(staircases)


class ParseError(GinSpaceError, ValueError):
    """Malformed input document."""

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
