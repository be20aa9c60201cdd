"""Invariant laminations of twist words in Penner form.

A word whose positive letters twist about pairwise disjoint curves A and whose
negative letters twist about pairwise disjoint curves B acts on the measures
carried by A and B through nonnegative matrices: Q_c = I + e_c i(c, .) for a
letter on c, raised to |power|. The product in word order is the transition
matrix; its Perron-Frobenius data give the dilatation and the weights of the
attracting lamination on the curves of A and B.
"""
from typing import List, Sequence, Tuple

import numpy as np

from services.shared.bh_utilities.errors import ReducibleOrPeriodicError
from services.shared.bh_utilities.settings import StableSettings
from services.metrics_service.app.core.action import apply_to_path
from services.metrics_service.app.models.mapping_class import MappingClass
from services.surface_service.app.core.curves import basic_curves, curve_from_path, intersection
from services.surface_service.app.core.paths import PathTooLongError, edge_weights
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.surface import Surface


def is_penner_form(surface: Surface, f: MappingClass) -> bool:
    if f.is_flip_presented or not f.word:
        return False
    try:
        check_penner_form(surface, f)
    except ReducibleOrPeriodicError:
        return False
    return True


def check_penner_form(surface: Surface, f: MappingClass) -> None:
    positive = [c for c, p in f.word if p > 0]
    negative = [c for c, p in f.word if p < 0]
    for family, sign in ((positive, "positive"), (negative, "negative")):
        for i in range(len(family)):
            for j in range(i + 1, len(family)):
                if intersection(surface, family[i], family[j]):
                    raise ReducibleOrPeriodicError(
                        f"{sign} twist curves of {f.name} are not disjoint",
                        curves=[list(family[i].weights), list(family[j].weights)],
                    )
    if {c.weights for c in positive} & {c.weights for c in negative}:
        raise ReducibleOrPeriodicError(f"{f.name} twists about one curve in both directions")


def transition_matrix(surface: Surface, f: MappingClass) -> Tuple[np.ndarray, Tuple[NormalCurve, ...]]:
    basis = f.curves()
    n = len(basis)
    index = {c.weights: k for k, c in enumerate(basis)}
    crossings = np.array(
        [[intersection(surface, a, b) for b in basis] for a in basis], dtype=float
    )
    matrix = np.eye(n)
    for curve, power in f.word:
        k = index[curve.weights]
        letter = np.eye(n)
        letter[k, :] += abs(power) * crossings[k, :]
        matrix = matrix @ letter
    return matrix, basis


def primitive_power(matrix: np.ndarray, bound: int) -> int:
    """Smallest k <= bound with matrix^k strictly positive, 0 if none."""
    pattern = (matrix > 0).astype(float)
    power = pattern.copy()
    for k in range(1, bound + 1):
        if np.all(power > 0):
            return k
        power = ((power @ pattern) > 0).astype(float)
    return 0


def perron_frobenius(matrix: np.ndarray, settings: StableSettings) -> Tuple[float, np.ndarray]:
    """Dominant eigenpair from an eigen solve, polished by power steps; the dilatation is the Rayleigh quotient."""
    values, vectors = np.linalg.eig(matrix)
    vector = np.abs(vectors[:, int(np.argmax(np.abs(values)))].real)
    if not vector.sum():
        vector = np.ones(matrix.shape[0])
    vector = vector / vector.sum()
    for _ in range(settings.max_iterations):
        image = matrix @ vector
        image = image / image.sum()
        if np.max(np.abs(image - vector)) < settings.convergence:
            vector = image
            break
        vector = image
    else:
        raise ReducibleOrPeriodicError(
            f"power iteration did not settle in {settings.max_iterations} steps"
        )
    dilatation = float(vector @ (matrix @ vector) / (vector @ vector))
    return dilatation, vector


def invariance_residual(matrix: np.ndarray, vector: np.ndarray) -> float:
    image = matrix @ vector
    return float(np.max(np.abs(image / image.sum() - vector / vector.sum())))


def approximant(surface: Surface, f: MappingClass, seed: NormalCurve, budget: int) -> Tuple[NormalCurve, int]:
    """Longest iterate f^n(seed) that fits in `budget` darts, with its exponent n."""
    tri = surface.triangulation
    path = seed.path
    exponent = 0
    while True:
        try:
            image = apply_to_path(surface, f, path, budget)
        except PathTooLongError:
            break
        if len(image) > budget or edge_weights(tri, image) == edge_weights(tri, path):
            break
        path = image
        exponent += 1
    return curve_from_path(surface, path), exponent


def seed_curve(surface: Surface, f: MappingClass, basis: Sequence[NormalCurve]) -> NormalCurve:
    """A basis curve that f moves; for twist words the curves of negative letters are tried first."""
    ordered: List[NormalCurve] = [c for c, p in f.word if p < 0] + list(basis or basic_curves(surface))
    for curve in ordered:
        if edge_weights(surface.triangulation, apply_to_path(surface, f, curve.path)) != curve.weights:
            return curve
    return ordered[0]
