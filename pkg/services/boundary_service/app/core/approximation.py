"""Regular points converging to a point with ending laminations."""
from typing import List, Sequence

import numpy as np

from services.boundary_service.app.core.invariants import unilaterally_adherent
from services.boundary_service.app.models.end_invariant import EndInvariant
from services.metrics_service.app.core.action import apply_to_curve
from services.metrics_service.app.models.mapping_class import MappingClass
from services.surface_service.app.core.curves import intersection
from services.surface_service.app.models.curve import MultiCurve, NormalCurve
from services.surface_service.app.models.lamination import IrrationalLeaf
from services.surface_service.app.models.surface import Surface


def projective_distance(curve: NormalCurve, leaf: IrrationalLeaf) -> float:
    """Sup distance between the weights of curve and leaf, both scaled to total weight 1."""
    mine = np.asarray(curve.weights, dtype=float)
    theirs = np.asarray(leaf.edge_weights(), dtype=float)
    return float(np.max(np.abs(mine / mine.sum() - theirs / theirs.sum())))


def iterates(surface: Surface, generator: MappingClass, seed: NormalCurve, steps: int, budget: int = 0) -> List[NormalCurve]:
    """g(seed), g^2(seed), ..., g^steps(seed)."""
    found: List[NormalCurve] = []
    current = seed
    for _ in range(steps):
        current = apply_to_curve(surface, generator, current, budget)
        found.append(current)
    return found


def regular_points(
    surface: Surface, target: EndInvariant, approximants: Sequence[Sequence[NormalCurve]]
) -> List[EndInvariant]:
    """a_i: the parabolics of the target plus the i-th approximant of every ending."""
    points = []
    for curves in zip(*approximants):
        parabolics = MultiCurve.of(surface.id, list(target.parabolics) + list(curves))
        points.append(EndInvariant(surface.id, parabolics, (), label=target.label))
    return points


def transverse_ok(
    surface: Surface,
    target: EndInvariant,
    point: EndInvariant,
    curves: Sequence[NormalCurve],
    universe: Sequence[NormalCurve],
) -> bool:
    """a_i adheres to no point got from the target's parabolics by adding a curve crossing its approximants."""
    base = list(target.parabolics)
    for x in universe:
        if not any(intersection(surface, x, k) for k in curves):
            continue
        if any(x.weights == p.weights or intersection(surface, x, p) for p in base):
            continue
        wider = EndInvariant(surface.id, MultiCurve.of(surface.id, base + [x]))
        if unilaterally_adherent(point, wider):
            return False
    return True
