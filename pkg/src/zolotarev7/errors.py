"""Exception hierarchy shared by every module."""


class ZolotarevError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ZolotarevError, ValueError):
    """A parameter lies outside the interval where a formula is valid."""


class ValidityError(ZolotarevError, ArithmeticError):
    """A radicand that must be non-negative turned out negative."""


class RootFindingError(ZolotarevError, ArithmeticError):
    """A requested root does not exist or could not be bracketed."""


class ConvergenceError(ZolotarevError, ArithmeticError):
    """An iteration did not converge; ``state`` holds the last iterate."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class DataIntegrityError(ZolotarevError):
    """The coefficient data file is malformed or fails an integrity check."""

    def __init__(self, message, symbol=None):
        super().__init__(message)
        self.symbol = symbol
