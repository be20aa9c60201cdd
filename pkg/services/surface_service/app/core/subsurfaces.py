"""Complements of removed pieces and minimal supporting surfaces."""
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from services.shared.bh_utilities.errors import ClosedCurveInputError, OverlapError
from services.surface_service.app.core.arcs import pants_holes
from services.surface_service.app.core.curves import intersection
from services.surface_service.app.core.cutting import CutResult, Piece, cut_along, locate_curve
from services.surface_service.app.core.laminations import frame_cut, leaf_curve_intersection
from services.surface_service.app.models.curve import MultiCurve, NormalCurve
from services.surface_service.app.models.lamination import ArcLeaf, ClosedLeaf, Leaf
from services.surface_service.app.models.subsurface import Subsurface
from services.surface_service.app.models.surface import Surface

Removed = Union[Subsurface, MultiCurve]


def greedy_disjoint(
    surface: Surface, curves: Iterable[NormalCurve], start: Sequence[NormalCurve] = ()
) -> List[NormalCurve]:
    """Extend `start` by curves, in the given order, that keep the family disjoint."""
    chosen: List[NormalCurve] = list(start)
    for curve in curves:
        if any(c.weights == curve.weights for c in chosen):
            continue
        if all(intersection(surface, curve, c) == 0 for c in chosen):
            chosen.append(curve)
    return chosen


def _complement(surface: Surface, removed: Sequence[Removed]) -> Tuple[CutResult, List[Piece]]:
    curves: List[NormalCurve] = []
    subsurfaces: List[Subsurface] = []
    for item in removed:
        if isinstance(item, Subsurface):
            subsurfaces.append(item)
            curves.extend(item.frontier)
        else:
            curves.extend(item.components)
    cut = cut_along(surface, curves)
    taken = set()
    for sub in subsurfaces:
        if sub.is_whole:
            if len(removed) > 1:
                raise OverlapError("the whole surface overlaps every other removed piece")
            return cut, []
        piece = cut.piece_by_key(sub.key)
        if piece is None:
            raise OverlapError(
                "a removed subsurface is cut by another removed curve", type=sub.type.label
            )
        if piece.index in taken:
            raise OverlapError("removed subsurfaces overlap", type=sub.type.label)
        taken.add(piece.index)
    return cut, [piece for piece in cut.pieces if piece.index not in taken]


def complement_pieces(surface: Surface, removed: Sequence[Removed]) -> List[Piece]:
    """Pieces of the surface left after cutting along and deleting the removed parts."""
    return _complement(surface, removed)[1]


def complement_subsurfaces(surface: Surface, removed: Sequence[Removed]) -> List[Subsurface]:
    cut, pieces = _complement(surface, removed)
    return [Subsurface.from_piece(cut, piece) for piece in pieces]


def arc_support(surface: Surface, leaf: ArcLeaf) -> Subsurface:
    """The pants of the arc's decomposition that carries the arc."""
    cut = frame_cut(surface, leaf.frame)
    for piece in cut.pieces:
        if piece.type.is_pants() and pants_holes(cut, piece) == leaf.arc.holes:
            return Subsurface.from_piece(cut, piece)
    raise ValueError(f"no pants carries {leaf.arc.label()}")


def minimal_supporting_surface(
    surface: Surface,
    leaf: Leaf,
    universe: Sequence[NormalCurve],
    ambient: Optional[Subsurface] = None,
) -> Subsurface:
    """Smallest subsurface, among those bounded by universe curves, that carries the leaf.

    Curves disjoint from the leaf are added greedily to the ambient frontier;
    the leaf then lies in a single piece, which no remaining disjoint curve
    enters.
    """
    if isinstance(leaf, ClosedLeaf):
        raise ClosedCurveInputError("closed curves have no supporting surface", curve=list(leaf.curve.weights))
    if isinstance(leaf, ArcLeaf):
        return arc_support(surface, leaf)
    start = list(ambient.frontier) if ambient else []
    disjoint = [c for c in universe if leaf_curve_intersection(surface, leaf, c) == 0]
    family = greedy_disjoint(surface, disjoint, start)
    if not family:
        cut = cut_along(surface, [])
        return Subsurface.from_piece(cut, cut.pieces[0])
    cut = cut_along(surface, family)
    piece = locate_curve(surface, cut, leaf.approximant)
    return Subsurface.from_piece(cut, piece)

