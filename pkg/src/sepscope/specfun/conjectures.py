"""Exact conjectured (and, for two qubits, proven) HS separability probabilities."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType


@dataclass(frozen=True)
class ConjectureEntry:
    label: str
    field: str  # "real", "complex" or "quaternion"
    dims: tuple[int, int]
    value: Fraction

    @property
    def n(self) -> int:
        return self.dims[0] * self.dims[1]


class ConjectureTable:
    """Read-only lookup keyed by system label or by ``(field, dims)``."""

    def __init__(self, entries):
        self._by_label = MappingProxyType({e.label: e for e in entries})
        self._by_key = MappingProxyType({(e.field, e.dims): e for e in entries})

    def __getitem__(self, label: str) -> Fraction:
        return self._by_label[label].value

    def __iter__(self):
        return iter(self._by_label.values())

    def __len__(self) -> int:
        return len(self._by_label)

    def __contains__(self, label) -> bool:
        return label in self._by_label

    def entry(self, label: str) -> ConjectureEntry:
        return self._by_label[label]

    def lookup(self, field: str, dims) -> Fraction | None:
        e = self._by_key.get((field, tuple(dims)))
        return None if e is None else e.value


CONJECTURES = ConjectureTable(
    [
        ConjectureEntry("two-rebit", "real", (2, 2), Fraction(29, 64)),
        ConjectureEntry("two-qubit", "complex", (2, 2), Fraction(8, 33)),
        ConjectureEntry("two-quaterbit", "quaternion", (2, 2), Fraction(26, 323)),
        ConjectureEntry("rebit-retrit", "real", (2, 3), Fraction(860, 6561)),
        ConjectureEntry("qubit-qutrit", "complex", (2, 3), Fraction(27, 1000)),
        ConjectureEntry("rebit-redit", "real", (2, 4), Fraction(201, 8192)),
        ConjectureEntry("qubit-qudit", "complex", (2, 4), Fraction(16, 12375)),
    ]
)
