"""Finite sets of curves and arcs whose lengths are watched along a sequence."""
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

from services.surface_service.app.core.arcs import arcs_of_pants, pants_holes
from services.surface_service.app.core.curves import intersection
from services.surface_service.app.core.laminations import frame_cut
from services.surface_service.app.core.cutting import locate_curve
from services.surface_service.app.core.subsurfaces import greedy_disjoint
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.lamination import ArcLeaf
from services.surface_service.app.models.subsurface import Subsurface
from services.surface_service.app.models.surface import Surface

Candidate = Union[NormalCurve, ArcLeaf]


def candidate_key(candidate: Candidate) -> str:
    if isinstance(candidate, ArcLeaf):
        return candidate.key
    return candidate.key()


@dataclass(frozen=True)
class CandidateSet:
    """Closed curves first, then arcs; `decomposition` is the pants decomposition used for the arcs."""

    curves: Tuple[NormalCurve, ...]
    arcs: Tuple[ArcLeaf, ...]
    decomposition: Tuple[NormalCurve, ...]
    frontier: Tuple[NormalCurve, ...]

    @property
    def items(self) -> Tuple[Candidate, ...]:
        return self.curves + self.arcs

    @property
    def keys(self) -> Tuple[str, ...]:
        return tuple(candidate_key(c) for c in self.items)

    def __len__(self) -> int:
        return len(self.curves) + len(self.arcs)


def curves_in_piece(
    surface: Surface, curves: Sequence[NormalCurve], piece: Optional[Subsurface]
) -> List[NormalCurve]:
    """Curves of the list that lie in the piece and are not parallel to its frontier."""
    if piece is None or piece.is_whole:
        return list(curves)
    frontier = {c.weights for c in piece.frontier}
    cut = frame_cut(surface, piece.frontier)
    inside = []
    for curve in curves:
        if curve.weights in frontier:
            continue
        if any(intersection(surface, curve, f) for f in piece.frontier):
            continue
        located = locate_curve(surface, cut, curve)
        if located is not None and located.key(cut.curves) == piece.key:
            inside.append(curve)
    return inside


def spanning_curves(surface: Surface, ordered: Sequence[NormalCurve], piece_complexity: int) -> Tuple[List[NormalCurve], List[NormalCurve]]:
    """A pants decomposition taken greedily from `ordered`, and one dual curve per decomposition curve."""
    decomposition = greedy_disjoint(surface, ordered)[:piece_complexity]
    duals: List[NormalCurve] = []
    for d in decomposition:
        others = [x for x in decomposition if x.weights != d.weights]
        crossing = [c for c in ordered if c not in decomposition and intersection(surface, c, d) > 0]
        dual = next((c for c in crossing if all(intersection(surface, c, x) == 0 for x in others)), None)
        if dual is None and crossing:
            dual = crossing[0]
        if dual is not None and dual not in duals:
            duals.append(dual)
    return decomposition, duals


def frontier_arcs(
    surface: Surface, piece: Optional[Subsurface], decomposition: Sequence[NormalCurve]
) -> List[ArcLeaf]:
    """Arcs of the pants of `decomposition` inside the piece with both ends on the piece frontier."""
    if piece is None or piece.is_whole:
        return []
    frontier = {c.weights for c in piece.frontier}
    inner = {c.weights for c in decomposition}
    frame = tuple(sorted(set(piece.frontier) | set(decomposition)))
    cut = frame_cut(surface, frame)
    arcs: List[ArcLeaf] = []
    for p in cut.pieces:
        if not p.type.is_pants():
            continue
        adjacent = {cut.curves[i].weights for i, _ in p.sides}
        inside = (adjacent & inner) if inner else (p.key(cut.curves) == piece.key)
        if not inside:
            continue
        holes = pants_holes(cut, p)
        allowed = [h for h in holes if h[0] == "curve" and h[1][0] in frontier]
        arcs.extend(ArcLeaf(arc, frame) for arc in arcs_of_pants(holes, allowed))
    return sorted(arcs, key=lambda a: a.key)


def candidate_set(
    surface: Surface,
    universe: Sequence[NormalCurve],
    piece: Optional[Subsurface] = None,
    budget: Optional[int] = None,
    order: Optional[Callable[[NormalCurve], object]] = None,
) -> CandidateSet:
    """Spanning candidates for projective detection on the whole surface or one piece.

    `order` ranks curves before the greedy pants decomposition is drawn; the
    spanning set (decomposition plus duals) is always kept whatever the budget.
    """
    inside = curves_in_piece(surface, universe, piece)
    ordered = sorted(inside, key=order) if order else sorted(inside, key=lambda c: (c.total_weight, c.weights))
    piece_type = piece.type if piece is not None else surface.type
    decomposition, duals = spanning_curves(surface, ordered, piece_type.complexity)
    chosen: List[NormalCurve] = list(decomposition) + [d for d in duals if d not in decomposition]
    limit = len(ordered) if budget is None else max(budget, len(chosen))
    for curve in ordered:
        if len(chosen) >= limit:
            break
        if curve not in chosen:
            chosen.append(curve)
    frontier = tuple(piece.frontier) if piece is not None else ()
    return CandidateSet(
        curves=tuple(chosen),
        arcs=tuple(frontier_arcs(surface, piece, decomposition)),
        decomposition=tuple(decomposition),
        frontier=frontier,
    )
