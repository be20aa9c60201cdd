"""Surface types and the triangulated surfaces built from them."""
from functools import lru_cache
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field

from services.shared.bh_utilities.errors import (
    ClosedSurfaceUnsupportedError,
    ComplexityTooLowError,
)
from services.surface_service.app.core.triangulation import (
    IdealTriangulation,
    build_triangulation,
)


class SurfaceType(BaseModel):
    """Topological type of a connected surface: genus, punctures and boundary curves."""

    model_config = ConfigDict(frozen=True)

    genus: int = Field(ge=0)
    punctures: int = Field(ge=0)
    boundaries: int = Field(default=0, ge=0)

    @property
    def holes(self) -> int:
        return self.punctures + self.boundaries

    @property
    def xi(self) -> int:
        return 3 * self.genus + self.holes

    @property
    def complexity(self) -> int:
        """Number of curves in a pants decomposition, 3g - 3 + n."""
        return max(0, 3 * self.genus - 3 + self.holes)

    @property
    def teich_dim(self) -> int:
        return 6 * self.genus - 6 + 2 * self.holes

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.holes

    @property
    def label(self) -> str:
        if self.boundaries:
            return f"S({self.genus},{self.punctures},{self.boundaries})"
        return f"S({self.genus},{self.punctures})"

    def is_pants(self) -> bool:
        return self.genus == 0 and self.holes == 3


class Surface:
    """A finite-type surface with its default ideal triangulation."""

    def __init__(self, surface_type: SurfaceType, triangulation: IdealTriangulation):
        self.type = surface_type
        self.triangulation = triangulation

    @property
    def id(self) -> str:
        return self.type.label

    @property
    def genus(self) -> int:
        return self.type.genus

    @property
    def punctures(self) -> int:
        return self.type.punctures

    def __repr__(self) -> str:
        return f"Surface({self.id}, triangles={self.triangulation.n_triangles})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Surface) and other.type == self.type

    def __hash__(self) -> int:
        return hash(self.type)


@lru_cache(maxsize=None)
def get_surface(genus: int, punctures: int) -> Surface:
    if punctures == 0:
        raise ClosedSurfaceUnsupportedError(
            "closed surfaces are not supported", genus=genus, punctures=punctures
        )
    surface_type = SurfaceType(genus=genus, punctures=punctures)
    if surface_type.xi < 4:
        raise ComplexityTooLowError(
            f"{surface_type.label} has xi = {surface_type.xi} < 4",
            genus=genus,
            punctures=punctures,
        )
    return Surface(surface_type, build_triangulation(genus, punctures))


def surface_from_id(surface_id: str) -> Surface:
    """Parse a label such as "S(0,5)" back into the cached surface."""
    text = surface_id.strip()
    if not (text.startswith("S(") and text.endswith(")")):
        raise ValueError(f"not a surface label: {surface_id!r}")
    parts: Tuple[str, ...] = tuple(part.strip() for part in text[2:-1].split(","))
    if len(parts) != 2:
        raise ValueError(f"not a surface label: {surface_id!r}")
    return get_surface(int(parts[0]), int(parts[1]))
