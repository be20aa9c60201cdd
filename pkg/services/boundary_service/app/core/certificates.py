"""Certificates that the reduced Bers boundary and UML0 carry different topologies."""
import numpy as np

from services.boundary_service.app.core.invariants import formula_height, iota, is_uml0, unilaterally_adherent
from services.boundary_service.app.models.boundary import MismatchCertificate
from services.shared.bh_utilities.errors import DimensionTooLowError, OverlapError, SurfaceMismatchError
from services.surface_service.app.core.curves import intersection
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.lamination import ClosedLeaf
from services.surface_service.app.models.surface import Surface


def topology_mismatch(surface: Surface, c: NormalCurve, d: NormalCurve, terms: int = 8) -> MismatchCertificate:
    """Check, for disjoint distinct c and d, the facts separating the two topologies.

    The laminations c + d/n converge to c, their supports stay c + d, and the
    boundary point of c + d adheres to the point of c without the converse.
    """
    if surface.type.teich_dim <= 2:
        raise DimensionTooLowError(
            f"{surface.id} has Teichmuller dimension {surface.type.teich_dim}", teich_dim=surface.type.teich_dim
        )
    for curve in (c, d):
        if curve.surface_id != surface.id:
            raise SurfaceMismatchError(f"curve on {curve.surface_id}, surface is {surface.id}")
    if c.weights == d.weights or intersection(surface, c, d):
        raise OverlapError("c and d must be distinct and disjoint")

    base = np.asarray(c.weights, dtype=float)
    extra = np.asarray(d.weights, dtype=float)
    weights = []
    distances = []
    for n in range(1, terms + 1):
        w = base + extra / n
        weights.append(tuple(float(x) for x in w))
        distances.append(float(np.max(np.abs(w - base))))
    bound = float(np.max(extra))

    single, pair = iota(surface, [c]), iota(surface, [c, d])
    heights = (formula_height(surface, single), formula_height(surface, pair))
    checks = {
        "weights_converge": all(
            dist <= bound / n + 1e-12 for n, dist in enumerate(distances, start=1)
        ),
        "distances_decrease": all(a > b for a, b in zip(distances, distances[1:])),
        "supports_constant": all(
            {e for e, x in enumerate(w) if x > 0} == {e for e, x in enumerate(base + extra) if x > 0}
            for w in weights
        ),
        "both_in_uml0": is_uml0(surface, [ClosedLeaf(c)]) and is_uml0(surface, [ClosedLeaf(c), ClosedLeaf(d)]),
        "pair_adheres_to_single": unilaterally_adherent(pair, single),
        "single_does_not_adhere_to_pair": not unilaterally_adherent(single, pair),
        "height_drops_by_one": heights[0] - heights[1] == 1,
    }
    return MismatchCertificate(
        surface_id=surface.id,
        c=c,
        d=d,
        terms=terms,
        weights=tuple(weights),
        distances=tuple(distances),
        heights=heights,
        checks=checks,
    )
