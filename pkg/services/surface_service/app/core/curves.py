"""Construction and combinatorics of normal curves on a surface."""
from typing import Iterable, Iterator, List, Sequence, Tuple

from services.shared.bh_utilities.errors import (
    EmptyCurveError,
    MatchingViolationError,
    NotConnectedError,
    PeripheralError,
    SurfaceMismatchError,
)
from services.surface_service.app.core.paths import (
    Path,
    canonical_rotation,
    edge_weights,
    is_valid_path,
    path_intersection,
    reduce_cyclic,
    twist_path,
)
from services.surface_service.app.core.tracing import check_matching, trace_components
from services.surface_service.app.models.curve import MultiCurve, NormalCurve
from services.surface_service.app.models.surface import Surface


def is_peripheral_path(surface: Surface, path: Sequence) -> bool:
    tri = surface.triangulation
    return tri.is_peripheral(edge_weights(tri, path))


def curve_from_path(surface: Surface, path: Sequence) -> NormalCurve:
    """Canonical curve of a closed dart path, reducing it first."""
    tri = surface.triangulation
    reduced = reduce_cyclic(tri, path)
    if not reduced:
        raise EmptyCurveError("path reduces to a trivial loop")
    if not is_valid_path(tri, reduced):
        raise MatchingViolationError("path does not close up on the dual graph")
    if is_peripheral_path(surface, reduced):
        raise PeripheralError("curve is parallel to a puncture", weights=list(edge_weights(tri, reduced)))
    canonical, _ = canonical_rotation(tri, reduced)
    return NormalCurve(surface.id, edge_weights(tri, canonical), canonical)


def canonicalize(surface: Surface, weights: Sequence[int]) -> NormalCurve:
    """Validate a weight vector and return the curve it describes."""
    tri = surface.triangulation
    check_matching(tri, weights)
    if not any(weights):
        raise EmptyCurveError("all weights are zero")
    components = trace_components(tri, weights)
    if len(components) != 1:
        raise NotConnectedError(
            f"weights describe {len(components)} components", weights=list(weights)
        )
    path = components[0].path
    if is_peripheral_path(surface, path):
        raise PeripheralError("curve is parallel to a puncture", weights=list(weights))
    canonical, _ = canonical_rotation(tri, path)
    return NormalCurve(surface.id, tuple(int(w) for w in weights), canonical)


def split_multicurve(surface: Surface, weights: Sequence[int]) -> MultiCurve:
    """Essential components of a normal multicurve, parallel copies merged."""
    tri = surface.triangulation
    curves: List[NormalCurve] = []
    for component in trace_components(tri, weights):
        if is_peripheral_path(surface, component.path):
            continue
        canonical, _ = canonical_rotation(tri, component.path)
        curves.append(NormalCurve(surface.id, edge_weights(tri, canonical), canonical))
    return MultiCurve.of(surface.id, curves)


def peripheral_weights(surface: Surface) -> List[Tuple[int, ...]]:
    """Weight vectors of the curves around each puncture."""
    return list(surface.triangulation.link_weights)


def check_same_surface(*curves: NormalCurve) -> None:
    ids = {c.surface_id for c in curves}
    if len(ids) > 1:
        raise SurfaceMismatchError(f"curves live on different surfaces: {sorted(ids)}")


def intersection(surface: Surface, a: NormalCurve, b: NormalCurve) -> int:
    check_same_surface(a, b)
    if a.surface_id != surface.id:
        raise SurfaceMismatchError(f"curve on {a.surface_id}, surface is {surface.id}")
    if a.weights == b.weights:
        return 0
    return path_intersection(surface.triangulation, a.path, b.path)


def twist(surface: Surface, curve: NormalCurve, core: NormalCurve, power: int, budget: int = 0) -> NormalCurve:
    """T_core^power applied to curve; positive powers are left twists."""
    check_same_surface(curve, core)
    if power == 0 or curve.weights == core.weights:
        return curve
    path = twist_path(surface.triangulation, curve.path, core.path, power, budget)
    tri = surface.triangulation
    canonical, _ = canonical_rotation(tri, path)
    return NormalCurve(surface.id, edge_weights(tri, canonical), canonical)


def twist_raw(surface: Surface, path: Path, core: NormalCurve, power: int, budget: int = 0) -> Path:
    """Twist on an uncanonicalized path; used for long pulled-back curves."""
    if power == 0 or edge_weights(surface.triangulation, path) == core.weights:
        return tuple(path)
    return twist_path(surface.triangulation, path, core.path, power, budget)


def matching_vectors(surface: Surface, max_weight: int) -> Iterator[Tuple[int, ...]]:
    """Weight vectors bounded by max_weight that satisfy every matching condition."""
    tri = surface.triangulation
    closing: List[List[int]] = [[] for _ in range(tri.n_edges)]
    for t in range(tri.n_triangles):
        closing[max(tri.side_edges(t))].append(t)
    weights = [0] * tri.n_edges

    def triangle_ok(t: int) -> bool:
        a, b, c = (weights[e] for e in tri.side_edges(t))
        return (a + b + c) % 2 == 0 and a <= b + c and b <= a + c and c <= a + b

    def extend(edge: int) -> Iterator[Tuple[int, ...]]:
        if edge == tri.n_edges:
            yield tuple(weights)
            return
        for value in range(max_weight + 1):
            weights[edge] = value
            if all(triangle_ok(t) for t in closing[edge]):
                yield from extend(edge + 1)
        weights[edge] = 0

    yield from extend(0)


def enumerate_curves(surface: Surface, max_weight: int) -> List[NormalCurve]:
    """All essential curves whose edge weights are at most max_weight, ordered by weight vector."""
    found: List[NormalCurve] = []
    for weights in matching_vectors(surface, max_weight):
        if not any(weights):
            continue
        try:
            found.append(canonicalize(surface, weights))
        except (MatchingViolationError, NotConnectedError, PeripheralError, EmptyCurveError):
            continue
    return sorted(found, key=lambda c: (c.total_weight, c.weights))


def basic_curves(surface: Surface) -> List[NormalCurve]:
    return [c for c in enumerate_curves(surface, 1)]


def are_disjoint(surface: Surface, curves: Iterable[NormalCurve]) -> bool:
    curves = list(curves)
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            if curves[i].weights == curves[j].weights or intersection(surface, curves[i], curves[j]):
                return False
    return True
