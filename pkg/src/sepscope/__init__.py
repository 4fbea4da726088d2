"""Separability probabilities of random bipartite states: sampling, block analytics and closed forms."""
from .errors import (
    ConfigError,
    DimensionMismatch,
    NonConvergent,
    NotHermitian,
    NumericalError,
    SepscopeError,
)
from .matcore import Field

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DimensionMismatch",
    "Field",
    "NonConvergent",
    "NotHermitian",
    "NumericalError",
    "SepscopeError",
    "__version__",
]
