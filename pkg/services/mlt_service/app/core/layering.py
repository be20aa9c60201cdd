"""What each layer removes before the next one is taken."""
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from services.limits_service.app.core.candidates import CandidateSet
from services.limits_service.app.core.lengths import as_array, length_table
from services.limits_service.app.models.sequence import TeichSequence
from services.surface_service.app.core.subsurfaces import arc_support, minimal_supporting_surface
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.lamination import ArcLeaf, ClosedLeaf, Leaf
from services.surface_service.app.models.subsurface import Subsurface
from services.surface_service.app.models.surface import Surface


def component_support(
    surface: Surface, leaf: Leaf, universe: Sequence[NormalCurve], piece: Optional[Subsurface]
) -> Optional[Subsurface]:
    """Minimal supporting surface of a non-closed component; None for closed curves."""
    if isinstance(leaf, ClosedLeaf):
        return None
    if isinstance(leaf, ArcLeaf):
        return arc_support(surface, leaf)
    if leaf.support is not None:
        return leaf.support
    ambient = piece if piece is not None and not piece.is_whole else None
    return minimal_supporting_surface(surface, leaf, universe, ambient)


def removals(
    surface: Surface,
    components: Sequence[Tuple[Leaf, Optional[Subsurface]]],
    universe: Sequence[NormalCurve],
) -> Tuple[List[Tuple[str, Subsurface]], List[NormalCurve]]:
    """Supporting surfaces to delete and closed curves to cut.

    A closed component on the frontier of a supporting surface of the same
    layer is not cut; the frontier is cut with the surface anyway.
    """
    supports: Dict[str, Subsurface] = {}
    for leaf, piece in components:
        support = component_support(surface, leaf, universe, piece)
        if support is not None:
            supports[leaf.key] = support
    frontier = {c.weights for sub in supports.values() for c in sub.frontier}
    cut = [
        leaf.curve for leaf, _ in components
        if isinstance(leaf, ClosedLeaf) and leaf.curve.weights not in frontier
    ]
    return sorted(supports.items()), sorted(cut)


def growth_order(
    surface: Surface, seq: TeichSequence, curves: Sequence[NormalCurve], budget: int, span: int = 2
) -> Callable[[NormalCurve], object]:
    """Rank curves by how much their length moves over the first indices, slowest first."""
    if not curves:
        return lambda c: (c.total_weight, c.weights)
    table = length_table(surface, seq, CandidateSet(tuple(curves), (), (), ()), span, budget)
    moved: Dict[Tuple[int, ...], float] = {}
    if len(table.indices) >= 2:
        values = as_array(table)
        for curve, delta in zip(curves, values[-1] - values[0]):
            moved[curve.weights] = round(float(delta), 6)
    return lambda c: (moved.get(c.weights, float("inf")), c.total_weight, c.weights)
