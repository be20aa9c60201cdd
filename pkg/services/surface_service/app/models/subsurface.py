"""Essential subsurfaces described by their frontier and the sides facing inward."""
from dataclasses import dataclass
from typing import Tuple

from services.surface_service.app.core.cutting import CutResult, Piece
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.surface import SurfaceType


@dataclass(frozen=True)
class Subsurface:
    surface_id: str
    type: SurfaceType
    frontier: Tuple[NormalCurve, ...]
    sides: Tuple[Tuple[Tuple[int, ...], str], ...]
    punctures: Tuple[int, ...]

    @classmethod
    def from_piece(cls, cut: CutResult, piece: Piece) -> "Subsurface":
        indices = sorted({i for i, _ in piece.sides})
        return cls(
            surface_id=cut.surface.id,
            type=piece.type,
            frontier=tuple(cut.curves[i] for i in indices),
            sides=piece.key(cut.curves)[0],
            punctures=piece.punctures,
        )

    @property
    def key(self) -> tuple:
        return (self.sides, self.punctures)

    @property
    def is_whole(self) -> bool:
        return not self.frontier

    def describe(self) -> dict:
        return {
            "type": self.type.label,
            "genus": self.type.genus,
            "punctures": list(self.punctures),
            "frontier": [list(c.weights) for c in self.frontier],
            "sides": [[list(w), s] for w, s in self.sides],
        }
