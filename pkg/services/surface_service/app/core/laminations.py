"""Intersection numbers between curves, arcs and laminations."""
from functools import lru_cache
from typing import Iterable, Tuple

from services.surface_service.app.core.arcs import arc_arc_intersection, arc_curve_intersection
from services.surface_service.app.core.cutting import CutResult, cut_along
from services.surface_service.app.core.paths import Path, path_intersection
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.lamination import (
    ArcLeaf,
    ClosedLeaf,
    IrrationalLeaf,
    Leaf,
    MeasuredLamination,
)
from services.surface_service.app.models.surface import Surface, surface_from_id


@lru_cache(maxsize=256)
def _cached_cut(surface_id: str, frame: Tuple[NormalCurve, ...]) -> CutResult:
    return cut_along(surface_from_id(surface_id), frame)


def frame_cut(surface: Surface, frame: Tuple[NormalCurve, ...]) -> CutResult:
    return _cached_cut(surface.id, tuple(sorted(frame)))


def leaf_path(leaf: Leaf) -> Path:
    if isinstance(leaf, ClosedLeaf):
        return leaf.curve.path
    if isinstance(leaf, IrrationalLeaf):
        return leaf.approximant.path
    raise TypeError("arcs have no closed dart path")


def _unit(leaf: Leaf) -> float:
    if isinstance(leaf, IrrationalLeaf):
        return leaf.weight / leaf.scale
    return leaf.weight


def _same_class(a: Leaf, b: Leaf) -> bool:
    if isinstance(a, ClosedLeaf) and isinstance(b, ClosedLeaf):
        return a.curve.weights == b.curve.weights
    if isinstance(a, IrrationalLeaf) and isinstance(b, IrrationalLeaf):
        return a.provenance == b.provenance
    return False


def leaf_intersection(surface: Surface, a: Leaf, b: Leaf) -> float:
    """Bilinear intersection of two weighted leaves."""
    if _same_class(a, b):
        return 0.0
    tri = surface.triangulation
    if isinstance(a, ArcLeaf) and isinstance(b, ArcLeaf):
        return a.weight * b.weight * arc_arc_intersection(a.arc, b.arc)
    if isinstance(a, ArcLeaf) or isinstance(b, ArcLeaf):
        arc, other = (a, b) if isinstance(a, ArcLeaf) else (b, a)
        if isinstance(other, ClosedLeaf) and other.curve in arc.frame:
            return 0.0
        cut = frame_cut(surface, arc.frame)
        return arc.weight * _unit(other) * arc_curve_intersection(cut, arc.arc, leaf_path(other))
    return _unit(a) * _unit(b) * path_intersection(tri, leaf_path(a), leaf_path(b))


def leaf_curve_intersection(surface: Surface, leaf: Leaf, curve: NormalCurve) -> float:
    return leaf_intersection(surface, leaf, ClosedLeaf(curve))


def lamination_intersection(surface: Surface, first: MeasuredLamination, second: MeasuredLamination) -> float:
    return sum(
        leaf_intersection(surface, a, b) for a in first.components for b in second.components
    )


def same_leaf(a: Leaf, b: Leaf, tolerance: float = 1e-9) -> bool:
    """Closed curves and arcs by class; irrational leaves by provenance and projective weights."""
    if isinstance(a, IrrationalLeaf) and isinstance(b, IrrationalLeaf):
        return a.same_as(b, tolerance)
    return type(a) is type(b) and a.key == b.key


def leaf_in(leaf: Leaf, leaves: Iterable[Leaf], tolerance: float = 1e-9) -> bool:
    return any(same_leaf(leaf, other, tolerance) for other in leaves)
