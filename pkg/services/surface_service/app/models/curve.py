"""Curves and multicurves in normal coordinates."""
from dataclasses import dataclass, field
from typing import Iterable, Tuple

from services.surface_service.app.core.paths import Path


@dataclass(frozen=True, order=True)
class NormalCurve:
    """An essential simple closed curve: edge crossing counts plus its dart path.

    The weight vector is the canonical identity of the isotopy class; the path
    is the reduced cyclic dart sequence in canonical rotation.
    """

    surface_id: str
    weights: Tuple[int, ...]
    path: Path = field(compare=False, repr=False)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def key(self) -> str:
        return "c[" + ",".join(str(w) for w in self.weights) + "]"

    def is_basic(self) -> bool:
        return max(self.weights) <= 1


@dataclass(frozen=True)
class MultiCurve:
    surface_id: str
    components: Tuple[NormalCurve, ...] = ()

    @classmethod
    def of(cls, surface_id: str, curves: Iterable[NormalCurve]) -> "MultiCurve":
        unique = sorted(set(curves))
        return cls(surface_id=surface_id, components=tuple(unique))

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __contains__(self, curve: NormalCurve) -> bool:
        return curve in self.components

    def union(self, other: "MultiCurve") -> "MultiCurve":
        return MultiCurve.of(self.surface_id, self.components + other.components)

    def weights(self) -> Tuple[int, ...]:
        if not self.components:
            return ()
        return tuple(sum(column) for column in zip(*(c.weights for c in self.components)))
