"""Exception hierarchy shared by every tpkit module."""


class TpkitError(Exception):
    """Base class for all tpkit errors."""


class InvalidIndex(TpkitError, IndexError):
    """An index set is out of range, unsorted, or overlaps where it must not."""


class ShapeError(TpkitError, ValueError):
    """Matrix dimensions do not fit the requested operation."""


class InvalidOrder(TpkitError, ValueError):
    """An order parameter ``k`` is outside its admissible range."""


class DomainError(TpkitError, ValueError):
    """Input lies outside the mathematical domain of the operation."""


class HypothesisError(TpkitError):
    """A theorem's hypothesis does not hold for the supplied input."""


class ConsistencyError(TpkitError, ArithmeticError):
    """Internal arithmetic produced a result that cannot be right."""


class ParseError(TpkitError, ValueError):
    """Malformed matrix or parameter file."""

    def __init__(self, message, line=None, column=None):
        self.reason = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class UsageError(TpkitError, ValueError):
    """Bad command-line or driver request."""
