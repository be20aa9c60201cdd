from typing import List, Optional, Sequence

from services.surface_service.app.core import subsurfaces
from services.surface_service.app.core.cutting import Piece, cut_along
from services.surface_service.app.dto.surface import LaminationRecord, LeafRecord, PieceRecord
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.lamination import ClosedLeaf, IrrationalLeaf, Leaf, MeasuredLamination
from services.surface_service.app.models.subsurface import Subsurface
from services.surface_service.app.models.surface import Surface, SurfaceType


def piece_record(sub: Subsurface) -> PieceRecord:
    return PieceRecord(
        type=sub.type.label,
        genus=sub.type.genus,
        punctures=sub.type.punctures,
        boundaries=sub.type.boundaries,
        puncture_ids=list(sub.punctures),
        frontier=[list(c.weights) for c in sub.frontier],
    )


def leaf_record(leaf: Leaf) -> LeafRecord:
    if isinstance(leaf, ClosedLeaf):
        return LeafRecord(kind=leaf.kind.value, key=leaf.key, weight=leaf.weight, weights=list(leaf.curve.weights))
    if isinstance(leaf, IrrationalLeaf):
        return LeafRecord(
            kind=leaf.kind.value,
            key=leaf.key,
            weight=leaf.weight,
            weights=list(leaf.edge_weights()),
            provenance=leaf.provenance,
            cone_coordinates=list(leaf.cone_coordinates),
            support=piece_record(leaf.support) if leaf.support else None,
        )
    return LeafRecord(kind=leaf.kind.value, key=leaf.key, weight=leaf.weight)


def lamination_record(surface: Surface, lamination: MeasuredLamination) -> LaminationRecord:
    weights = lamination.edge_weights(surface.triangulation.n_edges)
    return LaminationRecord(
        surface_id=lamination.surface_id,
        weights=list(weights) if weights is not None else None,
        components=[leaf_record(leaf) for leaf in lamination.components],
    )


class SubsurfaceService:
    """Complements and supporting surfaces."""

    def __init__(self, logger):
        self.logger = logger

    def complement_components(self, surface: Surface, removed: Sequence[subsurfaces.Removed]) -> List[SurfaceType]:
        try:
            pieces = subsurfaces.complement_pieces(surface, removed)
            types = [piece.type for piece in pieces]
            self.logger.info(f"Complement in {surface.id}: {[t.label for t in types]}")
            return types
        except Exception as e:
            self.logger.error(f"Error computing complement in {surface.id}: {str(e)}")
            raise

    def complement_subsurfaces(self, surface: Surface, curves: Sequence[NormalCurve]) -> List[Subsurface]:
        cut = cut_along(surface, curves)
        return [Subsurface.from_piece(cut, piece) for piece in cut.pieces]

    def minimal_supporting_surface(
        self,
        surface: Surface,
        leaf: Leaf,
        universe: Sequence[NormalCurve],
        ambient: Optional[Subsurface] = None,
    ) -> Subsurface:
        try:
            support = subsurfaces.minimal_supporting_surface(surface, leaf, universe, ambient)
            self.logger.info(f"Support of {leaf.key}: {support.type.label} with {len(support.frontier)} frontier curves")
            return support
        except Exception as e:
            self.logger.error(f"Error finding support of {getattr(leaf, 'key', leaf)}: {str(e)}")
            raise

    def pieces(self, surface: Surface, curves: Sequence[NormalCurve]) -> List[Piece]:
        return cut_along(surface, curves).pieces
