"""Exception hierarchy shared by all modules."""


class SsaError(ValueError):
    """Base class for input and numerical errors raised by the package."""


class WindowOutOfRange(SsaError):
    pass


class NonFiniteInput(SsaError):
    pass


class NumericalFailure(SsaError):
    pass


class IndexOutOfRank(SsaError):
    pass


class LengthMismatch(SsaError):
    pass


class DegenerateComponent(SsaError):
    """A component has (numerically) zero weighted norm."""


class DegenerateWindow(SsaError):
    pass


class BlockTooLarge(SsaError):
    pass


class EmptySeries(SsaError):
    pass


class ParseError(SsaError):
    def __init__(self, row, column, value):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"row {row}, column {column!r}: cannot parse {value!r} as a finite real")


class DegenerateComponentWarning(UserWarning):
    pass


class RankTooSmall(UserWarning):
    pass
