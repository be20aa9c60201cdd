"""Layers of a multi-layered limit and the unions built from them."""
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from services.limits_service.app.models.sequence import ProjectiveLimitReport, Subsequence
from services.surface_service.app.models.lamination import Leaf
from services.surface_service.app.models.subsurface import Subsurface

LaminationSet = Tuple[Leaf, ...]


@dataclass(frozen=True)
class PieceLimit:
    piece: Subsurface
    report: ProjectiveLimitReport


@dataclass(frozen=True)
class Layer:
    """Limits found at one depth, with the supporting surface of every non-closed component."""

    depth: int
    pieces: Tuple[PieceLimit, ...]
    components: LaminationSet
    supports: Tuple[Tuple[str, Subsurface], ...] = ()
    subsequence: Subsequence = Subsequence()
    cut: Tuple[str, ...] = ()

    def support_of(self, key: str) -> Optional[Subsurface]:
        return dict(self.supports).get(key)


@dataclass(frozen=True)
class MltResult:
    surface_id: str
    layers: Tuple[Layer, ...]
    bounded: Tuple[Subsurface, ...] = field(default=(), compare=False)
    core: LaminationSet = ()
    intermediate: LaminationSet = ()
    extended: LaminationSet = ()

    def supports(self) -> Dict[str, Subsurface]:
        found: Dict[str, Subsurface] = {}
        for layer in self.layers:
            found.update(dict(layer.supports))
        return found


@dataclass(frozen=True)
class SandwichVerdict:
    lower_ok: bool
    upper_ok: bool
    missing: Tuple[str, ...] = ()
    extra: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.lower_ok and self.upper_ok
