"""Exception hierarchy.

Input problems and numerical failures are kept apart so the CLI can map them
onto distinct exit codes.
"""


class FBFError(Exception):
    """Base class for every error raised by this package."""


class InputError(FBFError, ValueError):
    pass


class NumericalError(FBFError, ArithmeticError):
    pass


class ParseError(InputError):
    def __init__(self, row, col, value):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"cannot parse {value!r} at row {row}, column {col!r}")


class MissingResponse(InputError):
    def __init__(self, row):
        self.row = row
        super().__init__(f"response is missing at row {row}")


class UnknownColumn(InputError):
    pass


class AlreadyMissing(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class EmptyIndexSet(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class IncompleteModelSet(InputError):
    pass


class TooManyPredictors(InputError):
    pass


class AllMissingRow(InputError):
    pass


class RankDeficient(NumericalError):
    pass


class InsufficientRows(NumericalError):
    pass


class FractionTooSmall(NumericalError):
    pass


class NotPositiveDefinite(NumericalError):
    pass


class DegenerateCovariance(NumericalError):
    pass
