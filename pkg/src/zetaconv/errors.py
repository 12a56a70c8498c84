"""Exception types shared across the package.

Every error raised by public operations derives from :class:`ZetaconvError`,
so callers (and the CLI) can catch numerical failures uniformly.
"""


class ZetaconvError(Exception):
    """Base class for all package errors."""


class PoleError(ZetaconvError):
    """Evaluation requested exactly at a pole (e.g. zeta at s=1, gamma at -n)."""


class DomainError(ZetaconvError):
    """Argument outside the mathematical domain of the operation."""


class PrecisionError(ZetaconvError):
    """Requested point lies outside the validated accuracy range."""


class ConvergenceError(ZetaconvError):
    """A quadrature or iteration failed to meet its tolerance within budget."""


class GridError(ZetaconvError):
    """Sampled-function grids are malformed or incompatible."""


class SingularSymbolError(ZetaconvError):
    """Deconvolution denominator is too degenerate to invert meaningfully."""


class RankError(ZetaconvError):
    """Translate Gram matrix is singular beyond the ridge jitter."""


class LimitError(ZetaconvError):
    """Request exceeds a configured table or sieve limit."""


class BudgetError(ZetaconvError):
    """Scan or quadrature budget cap exceeded."""


class TruncationWarning(UserWarning):
    """Input does not decay at the grid edges; results near the edges are suspect."""
