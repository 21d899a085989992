"""Exception types shared across the package."""


class BalanceError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(BalanceError):
    """An argument violates a documented precondition."""


class ParseError(BalanceError):
    """A data file is malformed; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NoMatches(BalanceError):
    """Matching retained no stratum with units from both groups."""


class InsufficientControls(BalanceError):
    """Fewer controls than the fixed matching ratio requires."""


class SingularCovariance(BalanceError):
    """Pooled covariance is numerically singular; pass a positive ridge."""


class NumericalError(BalanceError):
    """A computation produced a result outside its valid numerical range."""


class Unsupported(BalanceError):
    """The requested parameter combination is outside the supported theory."""


class Unreachable(BalanceError):
    """Bound inversion cannot reach the requested target level."""


class TooLarge(BalanceError):
    """Instance exceeds the size limit of an exhaustive search."""


class ExperimentDegenerate(BalanceError):
    """Too many simulation trials failed for the experiment to be meaningful."""
