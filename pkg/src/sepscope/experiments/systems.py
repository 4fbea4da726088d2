"""Named bipartite systems studied by the experiments."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ConfigError
from ..matcore import Field
from ..specfun.conjectures import CONJECTURES


@dataclass(frozen=True)
class SystemSpec:
    """A ``dA x dB`` system over a field; states are ``n x n`` with ``n = dA * dB``."""

    label: str
    dA: int
    dB: int
    field: Field

    @property
    def n(self) -> int:
        return self.dA * self.dB

    @property
    def block(self) -> int:
        """Size of the diagonal blocks ``D1, D2`` (the second factor)."""
        return self.dB

    @property
    def conjecture(self) -> Fraction | None:
        return CONJECTURES[self.label] if self.label in CONJECTURES else None

    @property
    def ppt_is_separable(self) -> bool:
        """PPT coincides with separability up to 6x6."""
        return self.n <= 6


SYSTEMS = {
    s.label: s
    for s in (
        SystemSpec("two-rebit", 2, 2, Field.REAL),
        SystemSpec("two-qubit", 2, 2, Field.COMPLEX),
        SystemSpec("rebit-retrit", 2, 3, Field.REAL),
        SystemSpec("qubit-qutrit", 2, 3, Field.COMPLEX),
        SystemSpec("rebit-redit", 2, 4, Field.REAL),
        SystemSpec("qubit-qudit", 2, 4, Field.COMPLEX),
    )
}


def get_system(label: str) -> SystemSpec:
    try:
        return SYSTEMS[label]
    except KeyError:
        raise ConfigError(f"unknown system {label!r}; choose from {', '.join(SYSTEMS)}") from None
