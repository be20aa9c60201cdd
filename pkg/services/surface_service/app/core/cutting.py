"""Cut a surface along a multicurve and read off the complementary pieces.

Each triangle splits into a central region plus, at every corner met by k
arcs, a tip region and k - 1 strips between consecutive arcs. Regions are
glued across edges segment by segment; the classes are the pieces. Euler
characteristics are counted from regions, glued segments, arc sides and the
copies of crossing points.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from services.shared.bh_utilities.errors import OverlapError
from services.surface_service.app.core.paths import canonical_rotation, edge_weights
from services.surface_service.app.core.tracing import corner_counts, trace_components
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.surface import Surface, SurfaceType

Region = tuple
Side = Tuple[int, str]

LEFT = "L"
RIGHT = "R"


def other_side(side: str) -> str:
    return RIGHT if side == LEFT else LEFT


class _UnionFind:
    def __init__(self):
        self.parent: Dict[Region, Region] = {}

    def add(self, item: Region) -> None:
        self.parent.setdefault(item, item)

    def find(self, item: Region) -> Region:
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a: Region, b: Region) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True)
class Piece:
    """A complementary component: its boundary sides, punctures and topological type."""

    index: int
    type: SurfaceType
    sides: Tuple[Side, ...]
    punctures: Tuple[int, ...]

    def key(self, curves: Sequence[NormalCurve]) -> tuple:
        """Identity independent of how the cut was assembled."""
        return (
            tuple(sorted((curves[i].weights, s) for i, s in self.sides)),
            self.punctures,
        )


@dataclass
class CutResult:
    surface: Surface
    curves: Tuple[NormalCurve, ...]
    weights: Tuple[int, ...]
    pieces: List[Piece]
    region_piece: Dict[Region, int] = field(repr=False)
    arcs: Dict[Tuple[int, int, int], Tuple[int, str]] = field(repr=False)
    corners: Dict[int, Tuple[int, int, int]] = field(repr=False)

    def region_of_segment(self, triangle: int, side: int, segment: int) -> Region:
        return _segment_region(self.surface, self.weights, self.corners[triangle], triangle, side, segment)

    def piece_of_side(self, curve_index: int, side: str) -> Piece:
        for piece in self.pieces:
            if (curve_index, side) in piece.sides:
                return piece
        raise KeyError((curve_index, side))

    def piece_by_key(self, key: tuple) -> Optional[Piece]:
        for piece in self.pieces:
            if piece.key(self.curves) == key:
                return piece
        return None

    def curve_index(self, curve: NormalCurve) -> int:
        for index, candidate in enumerate(self.curves):
            if candidate.weights == curve.weights:
                return index
        raise KeyError(curve.weights)


def _segment_region(
    surface: Surface,
    weights: Sequence[int],
    corners: Tuple[int, int, int],
    triangle: int,
    side: int,
    segment: int,
) -> Region:
    w = weights[surface.triangulation.edge((triangle, side))]
    if segment < corners[side]:
        return ("k", triangle, side, segment)
    far = (side + 1) % 3
    if w - segment < corners[far]:
        return ("k", triangle, far, w - segment)
    return ("c", triangle)


def _toward_region(step_triangle: int, corner: int, depth: int) -> Region:
    return ("k", step_triangle, corner, depth)


def _away_region(corners: Tuple[int, int, int], triangle: int, corner: int, depth: int) -> Region:
    if depth + 1 < corners[corner]:
        return ("k", triangle, corner, depth + 1)
    return ("c", triangle)


def cut_along(surface: Surface, curves: Sequence[NormalCurve]) -> CutResult:
    """Pieces of the surface cut along pairwise disjoint, pairwise distinct curves."""
    tri = surface.triangulation
    unique: List[NormalCurve] = []
    for curve in sorted(curves):
        if not unique or unique[-1].weights != curve.weights:
            unique.append(curve)
    curves = tuple(unique)

    weights = [0] * tri.n_edges
    for curve in curves:
        for e, w in enumerate(curve.weights):
            weights[e] += w
    weights = tuple(weights)

    by_weights = {curve.weights: index for index, curve in enumerate(curves)}
    components = trace_components(tri, weights) if curves else []
    if len(components) != len(curves):
        raise OverlapError("cut curves are not pairwise disjoint", count=len(curves))

    arcs: Dict[Tuple[int, int, int], Tuple[int, str]] = {}
    for component in components:
        index = by_weights.get(edge_weights(tri, component.path))
        if index is None:
            raise OverlapError("cut curves are not pairwise disjoint")
        _, flipped = canonical_rotation(tri, component.path)
        for step in component.steps:
            toward = RIGHT if step.corner_on_right else LEFT
            if flipped:
                toward = other_side(toward)
            arcs[(step.triangle, step.corner, step.depth)] = (index, toward)

    corners = {t: corner_counts(tri, weights, t) for t in range(tri.n_triangles)}
    uf = _UnionFind()
    for t in range(tri.n_triangles):
        uf.add(("c", t))
        for v in range(3):
            for d in range(corners[t][v]):
                uf.add(("k", t, v, d))

    glued: List[Region] = []
    for (t, j), (t2, j2) in tri.edges:
        w = weights[tri.edge((t, j))]
        for s in range(w + 1):
            a = _segment_region(surface, weights, corners[t], t, j, s)
            b = _segment_region(surface, weights, corners[t2], t2, j2, w - s)
            uf.union(a, b)
            glued.append(a)

    roots = sorted({uf.find(r) for r in uf.parent})
    root_index = {root: i for i, root in enumerate(roots)}
    region_piece = {r: root_index[uf.find(r)] for r in uf.parent}

    n = len(roots)
    chi = [0] * n
    for r in uf.parent:
        chi[region_piece[r]] += 1
    for r in glued:
        chi[region_piece[r]] -= 1
    for (t, v, d) in arcs:
        chi[region_piece[_toward_region(t, v, d)]] -= 1
        chi[region_piece[_away_region(corners[t], t, v, d)]] -= 1
    for (t, j), _ in tri.edges:
        w = weights[tri.edge((t, j))]
        for p in range(w):
            chi[region_piece[_segment_region(surface, weights, corners[t], t, j, p)]] += 1
            chi[region_piece[_segment_region(surface, weights, corners[t], t, j, p + 1)]] += 1

    punctures: List[List[int]] = [[] for _ in range(n)]
    for index, link in enumerate(tri.puncture_links):
        t, v = link[0]
        region = ("k", t, v, 0) if corners[t][v] else ("c", t)
        punctures[region_piece[region]].append(index)

    sides: List[List[Side]] = [[] for _ in range(n)]
    seen_curves = set()
    for (t, v, d), (index, toward) in sorted(arcs.items()):
        if index in seen_curves:
            continue
        seen_curves.add(index)
        sides[region_piece[_toward_region(t, v, d)]].append((index, toward))
        sides[region_piece[_away_region(corners[t], t, v, d)]].append((index, other_side(toward)))

    pieces: List[Piece] = []
    for i in range(n):
        b = len(sides[i])
        p = len(punctures[i])
        twice_genus = 2 - chi[i] - p - b
        if twice_genus < 0 or twice_genus % 2:
            raise ValueError(f"inconsistent piece topology: chi={chi[i]}, p={p}, b={b}")
        pieces.append(
            Piece(
                index=i,
                type=SurfaceType(genus=twice_genus // 2, punctures=p, boundaries=b),
                sides=tuple(sorted(sides[i])),
                punctures=tuple(sorted(punctures[i])),
            )
        )
    pieces.sort(key=lambda piece: (piece.sides, piece.punctures))
    renumber = {piece.index: k for k, piece in enumerate(pieces)}
    pieces = [
        Piece(index=k, type=piece.type, sides=piece.sides, punctures=piece.punctures)
        for k, piece in enumerate(pieces)
    ]
    region_piece = {r: renumber[i] for r, i in region_piece.items()}
    return CutResult(
        surface=surface,
        curves=curves,
        weights=weights,
        pieces=pieces,
        region_piece=region_piece,
        arcs=arcs,
        corners=corners,
    )


def locate_curve(surface: Surface, cut: CutResult, curve: NormalCurve) -> Optional[Piece]:
    """Piece of `cut` that contains a curve disjoint from every cut curve.

    Returns None when the curve is one of the cut curves.
    """
    if any(c.weights == curve.weights for c in cut.curves):
        return None
    refined = cut_along(surface, cut.curves + (curve,))
    index = refined.curve_index(curve)
    left = refined.piece_of_side(index, LEFT)
    right = refined.piece_of_side(index, RIGHT)
    merged_sides = set(left.sides) | set(right.sides)
    merged_sides -= {(index, LEFT), (index, RIGHT)}
    key = (
        tuple(sorted((refined.curves[i].weights, s) for i, s in merged_sides)),
        tuple(sorted(set(left.punctures) | set(right.punctures))),
    )
    piece = cut.piece_by_key(key)
    if piece is None:
        raise ValueError("curve could not be located among the pieces")
    return piece
