"""Trace a normal multicurve from its edge weights.

Inside a triangle with side weights (w0, w1, w2) the number of arcs cutting
corner v_j is (w_{j-1} + w_j - w_{j+1}) / 2. Corner v_j arcs take the first
positions of side j and the last positions of side j-1, nearest arc first.
"""
from typing import Dict, List, NamedTuple, Sequence, Set, Tuple

from services.shared.bh_utilities.errors import MatchingViolationError
from services.surface_service.app.core.paths import Path
from services.surface_service.app.core.triangulation import IdealTriangulation


class ArcStep(NamedTuple):
    """One normal arc of a traced curve inside a triangle."""

    triangle: int
    entry_side: int
    entry_position: int
    exit_side: int
    exit_position: int
    corner: int
    depth: int
    corner_on_right: bool


class TracedComponent(NamedTuple):
    steps: Tuple[ArcStep, ...]

    @property
    def path(self) -> Path:
        return tuple((step.triangle, step.exit_side) for step in self.steps)


def check_matching(tri: IdealTriangulation, weights: Sequence[int]) -> None:
    if len(weights) != tri.n_edges:
        raise MatchingViolationError(
            f"expected {tri.n_edges} weights, got {len(weights)}", weights=list(weights)
        )
    for w in weights:
        if int(w) != w or w < 0:
            raise MatchingViolationError("weights must be nonnegative integers", weights=list(weights))
    for t in range(tri.n_triangles):
        a, b, c = (weights[e] for e in tri.side_edges(t))
        if (a + b + c) % 2 or a > b + c or b > a + c or c > a + b:
            raise MatchingViolationError(
                f"triangle {t} violates the matching condition with weights {(a, b, c)}",
                triangle=t,
                weights=list(weights),
            )


def corner_counts(tri: IdealTriangulation, weights: Sequence[int], triangle: int) -> Tuple[int, int, int]:
    w = [weights[e] for e in tri.side_edges(triangle)]
    return tuple((w[(j - 1) % 3] + w[j] - w[(j + 1) % 3]) // 2 for j in range(3))


def _arc_from(
    tri: IdealTriangulation, weights: Sequence[int], triangle: int, side: int, position: int
) -> ArcStep:
    corners = corner_counts(tri, weights, triangle)
    w = [weights[e] for e in tri.side_edges(triangle)]
    if position < corners[side]:
        # Corner v_side sits at the start of this side and the end of side-1.
        depth = position
        exit_side = (side - 1) % 3
        return ArcStep(triangle, side, position, exit_side, w[exit_side] - 1 - depth, side, depth, False)
    depth = w[side] - 1 - position
    exit_side = (side + 1) % 3
    return ArcStep(triangle, side, position, exit_side, depth, exit_side, depth, True)


def trace_components(tri: IdealTriangulation, weights: Sequence[int]) -> List[TracedComponent]:
    """Every connected component of the multicurve, in a deterministic order."""
    check_matching(tri, weights)
    visited: Set[Tuple[int, int, int]] = set()
    components: List[TracedComponent] = []
    for edge, ((t, j), _) in enumerate(tri.edges):
        for position in range(weights[edge]):
            if (t, j, position) in visited:
                continue
            # Start by entering t' through the partner side of (t, j).
            t2, j2 = tri.partner((t, j))
            start = (t2, j2, weights[edge] - 1 - position)
            steps: List[ArcStep] = []
            current = start
            while True:
                step = _arc_from(tri, weights, *current)
                steps.append(step)
                visited.add((current[0], current[1], current[2]))
                exit_weight = weights[tri.edge((step.triangle, step.exit_side))]
                visited.add((step.triangle, step.exit_side, step.exit_position))
                nt, ns = tri.partner((step.triangle, step.exit_side))
                current = (nt, ns, exit_weight - 1 - step.exit_position)
                if current == start:
                    break
                if len(steps) > 2 * sum(weights) + 2:
                    raise MatchingViolationError("tracing did not close up", weights=list(weights))
            components.append(TracedComponent(tuple(steps)))
    return components


def component_map(tri: IdealTriangulation, components: Sequence[TracedComponent]) -> Dict[Tuple[int, int, int], int]:
    """Arc (triangle, corner, depth) -> index of the component that owns it."""
    owner: Dict[Tuple[int, int, int], int] = {}
    for index, component in enumerate(components):
        for step in component.steps:
            owner[(step.triangle, step.corner, step.depth)] = index
    return owner
