"""Exception hierarchy shared by every cnotperm module."""


class CnotPermError(Exception):
    """Base class for all errors raised by cnotperm."""


class InvalidInputError(CnotPermError, ValueError):
    """A gate, circuit, permutation or matrix failed validation."""


class CircuitParseError(InvalidInputError):
    """Circuit text could not be parsed.

    ``column`` is the 1-based position of the offending token.
    """

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column


class UnsupportedSizeError(CnotPermError):
    """Requested wire count is outside the range an exact table supports."""


class UnrealizableError(CnotPermError):
    """Target matrix is singular, so no CNOT circuit realizes it."""


class BudgetExceededError(CnotPermError):
    """An exhaustive enumeration would exceed its configured budget."""


class ClassClosureError(CnotPermError):
    """A circuit set is not closed under the requested relabeling group."""


class TableFileError(CnotPermError):
    """Base class for distance-table persistence failures."""


class TableFormatError(TableFileError):
    """File does not start with the expected magic bytes."""


class TableVersionError(TableFileError):
    """File carries a format version this code does not read."""


class TableCorruptError(TableFileError):
    """File is truncated, has trailing bytes, or an inconsistent length."""


class TableSizeMismatchError(TableFileError):
    """File holds a table for a different wire count than requested."""


class TableIntegrityError(TableFileError):
    """Table contents violate the BFS distance invariants."""
