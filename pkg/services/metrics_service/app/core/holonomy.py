"""Shear holonomy and geodesic lengths.

Each dart contributes E(z) T, with E(z) = diag(e^{z/2}, e^{-z/2}) for the
shear z of the edge it crosses and T the turn matrix of the triangle it
enters: [[1,1],[0,1]] for a left turn, [[1,0],[1,1]] for a right turn. All
factors are nonnegative, so long products are reduced pairwise with one
log-scale per level and the trace never overflows. Shears too large to
exponentiate are reduced entrywise in log space instead.
"""
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space

from services.shared.bh_utilities.errors import DegenerateStructureError, NonCompleteStructureError
from services.surface_service.app.core.curves import peripheral_weights
from services.surface_service.app.core.paths import Path, turn_sequence
from services.surface_service.app.models.surface import Surface

COMPLETENESS_TOLERANCE = 1e-9
TRACE_FLOOR = 2.0 + 1e-9
DETERMINANT_TOLERANCE = 1e-12
_DIRECT_LOG_TRACE = 20.0
_DIRECT_HALF_SHEAR = 300.0


def link_matrix(surface: Surface) -> np.ndarray:
    """Row p counts how often the link of puncture p crosses each edge."""
    return np.asarray(peripheral_weights(surface), dtype=float)


def cusp_sums(surface: Surface, shears: Sequence[float]) -> np.ndarray:
    return link_matrix(surface) @ np.asarray(shears, dtype=float)


def check_complete(surface: Surface, shears: Sequence[float]) -> None:
    if len(shears) != surface.triangulation.n_edges:
        raise NonCompleteStructureError(
            f"expected {surface.triangulation.n_edges} shears, got {len(shears)}"
        )
    sums = cusp_sums(surface, shears)
    worst = int(np.argmax(np.abs(sums))) if len(sums) else 0
    if len(sums) and abs(sums[worst]) > COMPLETENESS_TOLERANCE:
        raise NonCompleteStructureError(
            f"shears around puncture {worst} sum to {sums[worst]:.3e}",
            puncture=worst,
            residual=float(sums[worst]),
        )


def dart_matrices(surface: Surface, shears: np.ndarray, path: Path) -> np.ndarray:
    tri = surface.triangulation
    edges = np.fromiter((tri.edge(d) for d in path), dtype=int, count=len(path))
    right = np.asarray(turn_sequence(tri, path), dtype=bool)
    half = shears[edges] / 2.0
    up, down = np.exp(half), np.exp(-half)
    mats = np.zeros((len(path), 2, 2))
    mats[:, 0, 0] = up
    mats[:, 0, 1] = np.where(right, 0.0, up)
    mats[:, 1, 0] = np.where(right, down, 0.0)
    mats[:, 1, 1] = down
    return mats


def reduce_product(mats: np.ndarray) -> Tuple[np.ndarray, float]:
    """Ordered product of nonnegative matrices as (normalized matrix, log scale)."""
    log_scale = 0.0
    while len(mats) > 1:
        if len(mats) % 2:
            mats = np.concatenate([mats, np.eye(2)[None, :, :]])
        mats = np.matmul(mats[0::2], mats[1::2])
        peaks = mats.max(axis=(1, 2))
        mats = mats / peaks[:, None, None]
        log_scale += float(np.log(peaks).sum())
    return mats[0], log_scale


def log_dart_matrices(surface: Surface, shears: np.ndarray, path: Path) -> np.ndarray:
    """Entrywise logs of the dart matrices; zero entries are -inf."""
    tri = surface.triangulation
    edges = np.fromiter((tri.edge(d) for d in path), dtype=int, count=len(path))
    right = np.asarray(turn_sequence(tri, path), dtype=bool)
    half = shears[edges] / 2.0
    mats = np.full((len(path), 2, 2), -np.inf)
    mats[:, 0, 0] = half
    mats[:, 0, 1] = np.where(right, -np.inf, half)
    mats[:, 1, 0] = np.where(right, -half, -np.inf)
    mats[:, 1, 1] = -half
    return mats


def log_reduce_product(mats: np.ndarray) -> np.ndarray:
    """Entrywise log of an ordered product, for shears too large to exponentiate."""
    identity = np.array([[0.0, -np.inf], [-np.inf, 0.0]])
    while len(mats) > 1:
        if len(mats) % 2:
            mats = np.concatenate([mats, identity[None, :, :]])
        left, right = mats[0::2], mats[1::2]
        mats = np.logaddexp(
            left[:, :, 0, None] + right[:, None, 0, :],
            left[:, :, 1, None] + right[:, None, 1, :],
        )
    return mats[0]


def log_trace(surface: Surface, shears: np.ndarray, path: Path) -> float:
    tri = surface.triangulation
    if np.max(np.abs(shears[[tri.edge(d) for d in path]])) / 2.0 > _DIRECT_HALF_SHEAR:
        product = log_reduce_product(log_dart_matrices(surface, shears, path))
        return float(np.logaddexp(product[0, 0], product[1, 1]))
    product, log_scale = reduce_product(dart_matrices(surface, shears, path))
    return float(np.log(np.trace(product))) + log_scale


def length_from_log_trace(y: float) -> float:
    """2 arccosh(e^y / 2), evaluated stably for huge traces."""
    if y < np.log(TRACE_FLOOR):
        raise DegenerateStructureError(
            f"trace {np.exp(y):.12f} is not hyperbolic", trace=float(np.exp(y))
        )
    if y < _DIRECT_LOG_TRACE:
        return float(2.0 * np.arccosh(np.exp(y) / 2.0))
    return float(2.0 * (y - np.log(2.0) + np.log1p(np.sqrt(1.0 - 4.0 * np.exp(-2.0 * y)))))


def path_length(surface: Surface, shears: Sequence[float], path: Path) -> float:
    return length_from_log_trace(log_trace(surface, np.asarray(shears, dtype=float), path))


def holonomy(surface: Surface, shears: Sequence[float], path: Path) -> np.ndarray:
    """Unscaled holonomy product; only meaningful for paths of moderate length."""
    product = np.eye(2)
    for mat in dart_matrices(surface, np.asarray(shears, dtype=float), path):
        product = product @ mat
    det = float(np.linalg.det(product))
    scale = max(1.0, float(np.max(np.abs(product))) ** 2)
    if abs(det - 1.0) > DETERMINANT_TOLERANCE * scale:
        raise DegenerateStructureError(f"holonomy determinant {det!r} is not 1")
    return product


def random_shears(surface: Surface, seed: Optional[int] = None, sigma: float = 1.0) -> np.ndarray:
    """Gaussian shears projected onto the complete structures."""
    rng = np.random.default_rng(seed)
    basis = null_space(link_matrix(surface))
    raw = rng.normal(0.0, sigma, size=basis.shape[1])
    return basis @ raw
