"""Exception hierarchy shared by all modules."""


class FaddeevaError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(FaddeevaError, ValueError):
    """Invalid expansion, grid or engine parameters."""


class DomainError(FaddeevaError, ValueError):
    """Argument outside the domain accepted by an evaluator."""


class PoleError(DomainError, ZeroDivisionError):
    """Argument hits a pole of the rational approximation."""


class OracleRangeError(DomainError):
    """Argument too large for the precision budget of the series oracle."""


class ConvergenceError(FaddeevaError, RuntimeError):
    """An iterative evaluation did not converge within its depth limit."""


class OracleIntegrityError(FaddeevaError, RuntimeError):
    """The two reference methods disagree beyond the allowed margin."""


class BranchTrackingError(FaddeevaError, RuntimeError):
    """Closed-form integral disagrees with its quadrature cross-check."""
