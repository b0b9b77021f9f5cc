"""Exception hierarchy shared by every module of the package."""


class UnitDistError(Exception):
    """Base class for all errors raised by :mod:`unitdist`."""


class DomainError(UnitDistError, ValueError):
    """An argument lies outside the domain of a function or distribution."""


class ConvergenceError(UnitDistError, RuntimeError):
    """An iterative numerical routine did not reach its tolerance."""


class EvaluationError(UnitDistError, ArithmeticError):
    """A callable returned a non-finite value where a finite one was needed."""


class ConstructionError(UnitDistError, ValueError):
    """An order-statistic selector matches none of the known closed forms."""


class TailOverflowError(UnitDistError, OverflowError):
    """A survival probability underflowed to zero (hazard, Anderson-Darling)."""


class DataError(UnitDistError, ValueError):
    """Base class for dataset ingestion and validation problems."""


class ParseError(DataError):
    """A line of input could not be parsed as a number."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class RangeError(DataError):
    """One or more observations fall outside the open unit interval."""

    def __init__(self, message, offending=()):
        super().__init__(message)
        self.offending = list(offending)


class EmptyDataError(DataError):
    """The input contained no observations."""


class DegenerateDataError(DataError):
    """All observations are identical, so spread-based quantities are undefined."""
