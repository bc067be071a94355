"""Exception hierarchy shared by all modules."""


class TracePIError(Exception):
    """Base class for every error raised by the package."""


class MalformedInputError(TracePIError, ValueError):
    """Structurally invalid input (empty trace block, bad arity, ...)."""


class UnsupportedOperationError(TracePIError):
    """The operation is well defined in principle but not modelled here."""


class ParseError(MalformedInputError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class AlgebraMismatchError(TracePIError, ValueError):
    """Elements from different algebras were combined."""


class InvalidAlgebraError(TracePIError, ValueError):
    """Structure constants fail associativity, unit, or trace symmetry."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class RowCapExceeded(TracePIError):
    """The requested degree would exceed the configured row cap."""

    def __init__(self, rows: int, cap: int):
        super().__init__(
            f"{rows} rows exceed the row cap of {cap}; "
            "raise it with --row-cap or TRACE_PI_ROW_CAP"
        )
        self.rows = rows
        self.cap = cap
