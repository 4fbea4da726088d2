"""Exception types raised across sepscope.

Everything derives from :class:`SepscopeError` so callers (and the CLI) can
separate configuration mistakes from numerical failures.
"""


class SepscopeError(Exception):
    """Base class for all sepscope errors."""


class ConfigError(SepscopeError, ValueError):
    """Invalid experiment configuration or command-line input."""


class NumericalError(SepscopeError, ArithmeticError):
    """A numerical routine could not produce a trustworthy result."""


class NotHermitian(NumericalError):
    pass


class NoConvergence(NumericalError):
    """Iterative matrix algorithm hit its sweep cap."""


class NonConvergent(NumericalError):
    """Series or quadrature failed to converge within its term budget."""


class NotPositiveDefinite(NumericalError):
    pass


class DegenerateDraw(NumericalError):
    pass


class DimensionMismatch(SepscopeError, ValueError):
    pass


class ZeroDiagonal(NumericalError):
    pass


class PoleError(SepscopeError, ValueError):
    """Function evaluated at a pole (e.g. log-gamma at a nonpositive integer)."""


class DomainError(SepscopeError, ValueError):
    """Argument outside the supported domain."""
