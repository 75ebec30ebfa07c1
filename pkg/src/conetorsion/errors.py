"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: validation problems exit with 2 and
convergence problems exit with 3.
"""


class ConeTorsionError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ConeTorsionError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class PoleError(DomainError):
    """A meromorphic function was evaluated exactly at one of its poles."""


class UnsupportedError(DomainError):
    """A requested order, dimension, kind or combination is not implemented."""


class BranchError(DomainError):
    """A spectral parameter touched the cut [0, inf)."""


class ConvergenceError(ConeTorsionError, ArithmeticError):
    """An iterative or truncated computation did not meet its tolerance."""


class InsufficientTruncationError(ConvergenceError):
    """The estimated truncation error of a sum exceeds the requested tolerance."""


class BesselOverflowError(ConeTorsionError, OverflowError):
    """A Bessel value is not representable; use the log-scaled variant."""
