"""Projective detection on a length table.

Lengths grow like the scaled intersection with the limit, so the direction
is read from sup-normalized increments (Stolz-Cesaro) and then matched
against the intersection vectors of a finite family of leaves.
"""
import itertools
import math
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import nnls

from services.shared.bh_utilities.errors import SpanningFailureError
from services.surface_service.app.core.laminations import leaf_intersection
from services.surface_service.app.models.lamination import ArcLeaf, ClosedLeaf, Leaf
from services.surface_service.app.models.surface import Surface, SurfaceType

ZERO = 1e-9


@dataclass(frozen=True)
class Direction:
    """A converging residue class of table rows and its limit direction."""

    modulus: int
    residue: int
    positions: Tuple[int, ...]
    vector: Tuple[float, ...]
    convergence: float
    history: Tuple[Tuple[float, ...], ...] = ()


@dataclass(frozen=True)
class Reconstruction:
    components: Tuple[Leaf, ...]
    residual: float


def default_l_max(piece_type: SurfaceType) -> float:
    return 2 * max(piece_type.teich_dim, 2) * math.acosh(3)


def growth(values: np.ndarray) -> float:
    if values.shape[0] < 2:
        return 0.0
    return float(np.max(values - values[0]))


def is_bounded(values: np.ndarray, l_max: float) -> bool:
    """Every candidate length stays at most l_max at every evaluated index."""
    return values.size == 0 or float(np.max(values)) <= l_max


def sup_normalize(vector: np.ndarray) -> np.ndarray:
    top = float(np.max(np.abs(vector)))
    return vector / top if top > 0 else vector


def normalized_increments(values: np.ndarray) -> np.ndarray:
    deltas = np.diff(values, axis=0)
    return np.vstack([sup_normalize(row) for row in deltas]) if deltas.size else deltas


def tail_distance(rows: np.ndarray, window: int) -> float:
    """max ||v_k - v|| over the last `window` rows, with v the last row."""
    tail = rows[-max(2, min(window, len(rows))):]
    return float(np.max(np.abs(tail - tail[-1])))


def detect_direction(
    values: np.ndarray, max_modulus: int, tolerance: float, window: int = 3
) -> Optional[Direction]:
    """First residue class, by increasing modulus, whose tail of normalized increments stays within tolerance."""
    best: Optional[Direction] = None
    for q in range(1, max_modulus + 1):
        for r in range(q):
            positions = [k for k in range(values.shape[0]) if k % q == r]
            if len(positions) < 3:
                continue
            rows = normalized_increments(values[positions])
            conv = tail_distance(rows, window)
            found = Direction(
                modulus=q,
                residue=r,
                positions=tuple(positions),
                vector=tuple(float(x) for x in rows[-1]),
                convergence=conv,
                history=tuple(tuple(float(x) for x in row) for row in rows),
            )
            if conv <= tolerance:
                return found
            if best is None or conv < best.convergence:
                best = found
    return best


def component_vectors(surface: Surface, components: Sequence[Leaf], candidates: Sequence[Leaf]) -> np.ndarray:
    """Row per component: its intersection with every candidate."""
    return np.array(
        [[leaf_intersection(surface, comp, cand) for cand in candidates] for comp in components], dtype=float
    ).reshape(len(components), len(candidates))


def as_leaf(candidate) -> Leaf:
    return candidate if isinstance(candidate, ArcLeaf) else ClosedLeaf(candidate)


def _fit_residual(matrix: np.ndarray, target: np.ndarray) -> Tuple[np.ndarray, float]:
    weights, _ = nnls(matrix.T, target)
    fit = matrix.T @ weights
    top = float(np.max(fit))
    if top <= ZERO:
        return weights, math.inf
    return weights / top, float(np.max(np.abs(fit / top - target)))


def reconstruct(
    surface: Surface,
    vector: Sequence[float],
    components: Sequence[Leaf],
    candidates: Sequence[Leaf],
    tolerance: float,
    max_size: int = 3,
) -> Optional[Reconstruction]:
    """Smallest family of pairwise disjoint components whose weighted intersections match the vector."""
    target = np.clip(np.asarray(vector, dtype=float), 0.0, None)
    if not components:
        return None
    vectors = component_vectors(surface, components, candidates)
    silent = target <= tolerance
    usable = [
        k for k in range(len(components))
        if np.max(vectors[k]) > ZERO and np.all(vectors[k][silent] <= ZERO)
    ]

    singles: List[Tuple[float, int]] = []
    for k in usable:
        _, residual = _fit_residual(vectors[[k]], target)
        if residual <= tolerance:
            singles.append((residual, k))
    for (_, j), (_, k) in itertools.combinations(singles, 2):
        if np.max(np.abs(sup_normalize(vectors[j]) - sup_normalize(vectors[k]))) <= ZERO:
            raise SpanningFailureError(
                f"candidates do not separate {components[j].key} and {components[k].key}",
                components=[components[j].key, components[k].key],
            )
    if singles:
        residual, k = min(singles)
        weight = 1.0 / float(np.max(vectors[k]))
        return Reconstruction((replace(components[k], weight=weight),), residual)

    disjoint: Dict[Tuple[int, int], bool] = {}

    def apart(j: int, k: int) -> bool:
        if (j, k) not in disjoint:
            disjoint[(j, k)] = leaf_intersection(surface, components[j], components[k]) <= ZERO
        return disjoint[(j, k)]

    for size in range(2, max_size + 1):
        best: Optional[Tuple[float, Tuple[int, ...], np.ndarray]] = None
        for family in itertools.combinations(usable, size):
            if not all(apart(j, k) for j, k in itertools.combinations(family, 2)):
                continue
            weights, residual = _fit_residual(vectors[list(family)], target)
            if residual <= tolerance and np.all(weights > ZERO) and (best is None or residual < best[0]):
                best = (residual, family, weights)
        if best is not None:
            residual, family, weights = best
            leaves = tuple(replace(components[k], weight=float(w)) for k, w in zip(family, weights))
            return Reconstruction(leaves, residual)
    return None
