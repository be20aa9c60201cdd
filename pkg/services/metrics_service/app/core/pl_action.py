"""Invariant laminations from the piecewise linear action on normal coordinates.

A flip presentation acts on measured laminations by the max-plus flip rule,
which is linear on each cone where the same side of every max wins. Power
iteration finds the cone of the attracting lamination; the linear piece there
is solved for its dominant eigenvector and the result is checked against the
exact piecewise linear action.
"""
from typing import Sequence, Tuple

import numpy as np

from services.metrics_service.app.core.action import apply_to_weights
from services.metrics_service.app.models.mapping_class import MappingClass
from services.shared.bh_utilities.errors import ReducibleOrPeriodicError, UnsupportedMappingClassError
from services.shared.bh_utilities.settings import StableSettings
from services.surface_service.app.core.flips import quad, triangulations_along
from services.surface_service.app.models.surface import Surface

EIGEN_EVERY = 8
PERIOD_WINDOW = 24


def linear_piece(surface: Surface, f: MappingClass, weights: Sequence[float]) -> np.ndarray:
    """Matrix M with f(v) = M v on the cone containing `weights`."""
    tri = surface.triangulation
    n = tri.n_edges
    matrix = np.eye(n)
    values = np.asarray(weights, dtype=float)
    for current, edge in zip(triangulations_along(tri, f.flips), f.flips):
        q = quad(current, edge)
        pair = q.forward if values[list(q.forward)].sum() >= values[list(q.backward)].sum() else q.backward
        step = np.eye(n)
        step[edge, edge] = -1.0
        for e in pair:
            step[edge, e] += 1.0
        matrix = step @ matrix
        values = step @ values
    permutation = np.zeros((n, n))
    for label, image in enumerate(f.relabel):
        permutation[image, label] = 1.0
    return permutation @ matrix


def image_of(surface: Surface, f: MappingClass, vector: Sequence[float]) -> np.ndarray:
    return np.asarray(apply_to_weights(surface, f, [float(x) for x in vector]), dtype=float)


def invariance_residual(surface: Surface, f: MappingClass, vector: Sequence[float]) -> float:
    """max |f(v)/|f(v)| - v/|v||, with |.| the sum of coordinates."""
    vector = np.asarray(vector, dtype=float)
    image = image_of(surface, f, vector)
    return float(np.max(np.abs(image / image.sum() - vector / vector.sum())))


def _dominant(matrix: np.ndarray) -> Tuple[float, np.ndarray]:
    values, vectors = np.linalg.eig(matrix)
    real = np.abs(values.imag) < 1e-9
    if not real.any():
        return 0.0, np.zeros(matrix.shape[0])
    k = int(np.argmax(np.where(real, values.real, -np.inf)))
    vector = vectors[:, k].real
    if vector.sum() < 0:
        vector = -vector
    return float(values[k].real), vector


def attracting_lamination(
    surface: Surface, f: MappingClass, seed: Sequence[float], settings: StableSettings
) -> Tuple[float, np.ndarray, int]:
    """(dilatation, weights summing to 1, iterations) of the lamination f^n(seed) converges to."""
    vector = np.asarray(seed, dtype=float)
    vector = vector / vector.sum()
    history = [vector]
    for step in range(1, settings.max_iterations + 1):
        image = image_of(surface, f, vector)
        growth = float(image.sum())
        image = image / growth
        change = float(np.max(np.abs(image - vector)))
        vector = image
        if change < settings.convergence:
            return growth, vector, step
        for period, earlier in enumerate(reversed(history[:-1]), start=2):
            if np.max(np.abs(image - earlier)) < settings.convergence:
                raise ReducibleOrPeriodicError(f"iterates of {f.name} repeat with period {period}", period=period)
        history = (history + [image])[-PERIOD_WINDOW:]
        if step % EIGEN_EVERY:
            continue
        _, candidate = _dominant(linear_piece(surface, f, vector))
        scale = np.max(np.abs(candidate))
        if not scale or candidate.min() < -settings.invariance_tolerance * scale:
            continue
        candidate = np.clip(candidate, 0.0, None)
        candidate = candidate / candidate.sum()
        if invariance_residual(surface, f, candidate) <= settings.invariance_tolerance:
            return float(image_of(surface, f, candidate).sum()), candidate, step
    raise UnsupportedMappingClassError(
        f"normalized iterates of {f.name} did not settle in {settings.max_iterations} steps",
        change=change,
    )
