"""Exception hierarchy for censmean.

Every error raised by the library derives from :class:`CensMeanError`, so
callers can catch the whole family with one clause.  Estimation failures
that a simulation loop is expected to survive (a diverged tail index, an
all-censored tail, a failed threshold selection, an unusable bootstrap)
derive from :class:`EstimationError`.
"""


class CensMeanError(Exception):
    """Base class for all censmean errors."""


class DomainError(CensMeanError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class ShapeError(CensMeanError, ValueError):
    """Input arrays have incompatible lengths or shapes."""


class ParseError(CensMeanError, ValueError):
    """A data row could not be ingested; the message carries the row index."""


class InfiniteMeanError(CensMeanError):
    """The tail index is >= 1, so the distribution has no finite mean."""


class DegenerateDesignError(CensMeanError):
    """A censoring design with p equal to 0 or 1 was requested."""


class EstimationError(CensMeanError):
    """Base class for recoverable estimation failures."""


class AllCensoredTailError(EstimationError):
    """Every one of the top-k observations is censored; p_hat = 0."""


class EstimateDivergedError(EstimationError):
    """The estimated tail index is >= 1; the tail-mean estimate is undefined."""


class SelectionError(EstimationError):
    """No usable number of top order statistics could be selected."""


class UnreliableBootstrapError(EstimationError):
    """More than half of the bootstrap replicates failed."""

    def __init__(self, message: str, failures: int):
        super().__init__(message)
        self.failures = failures


class ConfigError(CensMeanError, ValueError):
    """A simulation configuration is invalid."""
