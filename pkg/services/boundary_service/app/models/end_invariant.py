"""Points of the reduced Bers boundary as parabolic curves plus ending laminations."""
from dataclasses import dataclass, field
from typing import Tuple

from services.surface_service.app.models.curve import MultiCurve
from services.surface_service.app.models.lamination import ClosedLeaf, IrrationalLeaf, Leaf
from services.surface_service.app.models.subsurface import Subsurface


@dataclass(frozen=True)
class Ending:
    lamination: IrrationalLeaf
    support: Subsurface = field(compare=False)

    @property
    def key(self) -> str:
        return self.lamination.key


@dataclass(frozen=True)
class EndInvariant:
    surface_id: str
    parabolics: MultiCurve
    endings: Tuple[Ending, ...] = ()
    label: str = field(default="", compare=False)

    @property
    def is_regular(self) -> bool:
        return not self.endings

    def components(self) -> Tuple[Leaf, ...]:
        """e(a): the parabolic curves and the ending laminations, sorted by key."""
        leaves = [ClosedLeaf(c) for c in self.parabolics] + [e.lamination for e in self.endings]
        return tuple(sorted(leaves, key=lambda leaf: leaf.key))

    def keys(self) -> Tuple[str, ...]:
        return tuple(leaf.key for leaf in self.components())

    def name(self) -> str:
        return self.label or "{" + ", ".join(self.keys()) + "}"
