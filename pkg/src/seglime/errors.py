"""Exception types raised across the package.

Input-shaped problems (bad arrays, bad parameters, bad CSV) and model-side
problems (a black box that crashed or answered garbage) get distinct
branches so callers can map them to exit codes.
"""


class SeglimeError(Exception):
    """Base class for every error raised by this package."""


class InputError(SeglimeError):
    """Caller-supplied data or parameters are invalid."""


class NonRectangularError(InputError):
    def __init__(self, row):
        self.row = row
        super().__init__(f"row {row} has a different number of entries than row 0")


class NonFiniteValueError(InputError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"non-finite value at {index}")


class TooShortError(InputError):
    pass


class WindowTooSmallError(InputError):
    pass


class WindowTooLargeError(InputError):
    pass


class InvalidWindowError(InputError):
    pass


class InvalidKError(InputError):
    pass


class LengthMismatchError(InputError):
    pass


class OutOfBoundsError(InputError):
    pass


class CountTooLargeError(InputError):
    pass


class ConfigError(InputError):
    pass


class CsvParseError(InputError):
    def __init__(self, message, row=None, column=None):
        self.row = row
        self.column = column
        where = ""
        if row is not None:
            where = f" (row {row}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class ModelError(SeglimeError):
    """The black-box model misbehaved."""


class UnknownModelError(ModelError):
    pass


class ShapeMismatchError(ModelError):
    pass


class PredictionFailureError(ModelError):
    def __init__(self, message, detail=None):
        self.detail = detail
        super().__init__(message if detail is None else f"{message}: {detail}")


class SingularSystemError(SeglimeError):
    """The surrogate normal equations could not be factorized."""
