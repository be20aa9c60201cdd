from services.surface_service.app.core.triangulation import IdealTriangulation
from services.surface_service.app.dto.surface import (
    SurfaceInfo,
    TriangleSide,
    TriangulationExport,
)
from services.surface_service.app.models.surface import Surface, SurfaceType, get_surface


class SurfaceService:
    """Builds validated surfaces and their default triangulations."""

    def __init__(self, logger):
        self.logger = logger

    def make_surface(self, genus: int, punctures: int) -> Surface:
        try:
            surface = get_surface(genus, punctures)
            self.logger.info(f"Built {surface.id}: xi={surface.type.xi}, teich_dim={surface.type.teich_dim}")
            return surface
        except Exception as e:
            self.logger.error(f"Error building surface S({genus},{punctures}): {str(e)}")
            raise

    def default_triangulation(self, surface_type: SurfaceType) -> IdealTriangulation:
        return self.make_surface(surface_type.genus, surface_type.punctures).triangulation

    def describe(self, surface: Surface) -> SurfaceInfo:
        tri = surface.triangulation
        return SurfaceInfo(
            surface_id=surface.id,
            genus=surface.genus,
            punctures=surface.punctures,
            xi=surface.type.xi,
            teich_dim=surface.type.teich_dim,
            euler_characteristic=surface.type.euler_characteristic,
            triangles=tri.n_triangles,
            edges=tri.n_edges,
        )

    def export_triangulation(self, surface: Surface) -> TriangulationExport:
        tri = surface.triangulation
        sides = [
            TriangleSide(triangle=t, side=j, edge=tri.edge((t, j)), glued_to=list(tri.partner((t, j))))
            for t in range(tri.n_triangles)
            for j in range(3)
        ]
        return TriangulationExport(
            surface_id=surface.id,
            triangles=tri.n_triangles,
            edges=tri.n_edges,
            sides=sides,
            puncture_links=[[list(corner) for corner in link] for link in tri.puncture_links],
        )
