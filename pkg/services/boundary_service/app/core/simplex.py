"""Simplices of the curve complex recognised by adherence towers alone."""
from typing import Optional, Sequence

import numpy as np

from services.boundary_service.app.core.poset import AdherencePoset
from services.boundary_service.app.models.end_invariant import EndInvariant
from services.shared.bh_utilities.errors import EnumerationBudgetExceededError, OverlapError
from services.surface_service.app.models.curve import MultiCurve, NormalCurve
from services.surface_service.app.models.surface import Surface


def simplex_endpoint(
    surface: Surface, curves: Sequence[NormalCurve], poset: AdherencePoset
) -> Optional[EndInvariant]:
    """A common top of towers of length k from every single curve, at height dim/2 - k - 1.

    None when no enumerated invariant qualifies, which happens exactly when the
    curves do not span a k-simplex.
    """
    if len({c.weights for c in curves}) != len(curves):
        raise OverlapError("simplex vertices repeat")
    k = len(curves) - 1
    target = surface.type.teich_dim // 2 - k - 1
    if k < 0 or target < 0:
        return None
    starts = []
    for curve in curves:
        start = poset.index(EndInvariant(surface.id, MultiCurve.of(surface.id, [curve])))
        if start is None:
            raise EnumerationBudgetExceededError(
                f"curve {curve.key()} lies outside the enumerated universe", curve=list(curve.weights)
            )
        starts.append(start)
    above = np.logical_and.reduce([poset.leq[s] for s in starts])
    for j in np.flatnonzero(above & (poset.heights == target)):
        top = poset.invariants[int(j)]
        if all(poset.chain_length(poset.invariants[s], top) == k for s in starts):
            return top
    return None


def simplex_via_towers(surface: Surface, curves: Sequence[NormalCurve], poset: AdherencePoset) -> bool:
    return simplex_endpoint(surface, curves, poset) is not None
