"""Ideal triangulations of punctured surfaces.

A triangle has corners v0, v1, v2 in counter-clockwise order and side j runs
from v_j to v_{j+1}. Sides are glued in pairs with reversed orientation, so a
point at position p on a side of weight w lands at position w - 1 - p on its
partner. A dart (t, j) is the oriented crossing that leaves triangle t through
side j.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from services.shared.bh_utilities.errors import (
    ClosedSurfaceUnsupportedError,
    ComplexityTooLowError,
    FlipSequenceError,
)

Dart = Tuple[int, int]


@dataclass(frozen=True)
class IdealTriangulation:
    """Glued triangles with the punctures every corner and edge end sits at.

    `corner_punctures[3t + v]` is the puncture at corner v of triangle t,
    `edge_ends[e]` the punctures at the start and end of edge e seen from its
    first side, and `link_weights[p]` the normal coordinates of the loop around
    puncture p.
    """

    n_triangles: int
    partners: Tuple[Dart, ...]
    edge_of_dart: Tuple[int, ...]
    edges: Tuple[Tuple[Dart, Dart], ...]
    puncture_links: Tuple[Tuple[Dart, ...], ...] = field(default=())
    corner_punctures: Tuple[int, ...] = field(default=())
    edge_ends: Tuple[Tuple[int, int], ...] = field(default=())
    link_weights: Tuple[Tuple[int, ...], ...] = field(default=())

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_punctures(self) -> int:
        return len(self.puncture_links)

    def partner(self, dart: Dart) -> Dart:
        return self.partners[3 * dart[0] + dart[1]]

    def edge(self, dart: Dart) -> int:
        return self.edge_of_dart[3 * dart[0] + dart[1]]

    def side_edges(self, triangle: int) -> Tuple[int, int, int]:
        base = 3 * triangle
        return self.edge_of_dart[base], self.edge_of_dart[base + 1], self.edge_of_dart[base + 2]

    def puncture_of_corner(self, triangle: int, vertex: int) -> int:
        return self.corner_punctures[3 * triangle + vertex]

    def edges_at(self, puncture: int) -> Tuple[int, ...]:
        """Edges with at least one end at `puncture`."""
        return tuple(e for e, ends in enumerate(self.edge_ends) if puncture in ends)

    def is_loop(self, edge: int) -> bool:
        start, end = self.edge_ends[edge]
        return start == end

    def is_peripheral(self, weights: Sequence[int]) -> bool:
        """True for a positive multiple of the loop around one puncture."""
        for link in self.link_weights:
            k = next(w // l for w, l in zip(weights, link) if l)
            if k > 0 and all(w == k * l for w, l in zip(weights, link)):
                return True
        return False


def _assemble(
    n_triangles: int, gluing: Dict[Dart, Dart], labels: Optional[Dict[Dart, int]] = None
) -> IdealTriangulation:
    """Triangulation of a gluing; edges are numbered in discovery order unless `labels` names them."""
    partners: List[Dart] = []
    for t in range(n_triangles):
        for j in range(3):
            other = gluing[(t, j)]
            if gluing[other] != (t, j):
                raise ValueError(f"gluing is not an involution at {(t, j)}")
            partners.append(other)

    edge_of_dart = [-1] * (3 * n_triangles)
    found: Dict[int, Tuple[Dart, Dart]] = {}
    for t in range(n_triangles):
        for j in range(3):
            if edge_of_dart[3 * t + j] >= 0:
                continue
            other = partners[3 * t + j]
            label = len(found) if labels is None else labels[(t, j)]
            if label in found:
                raise ValueError(f"edge label {label} is used by two edges")
            edge_of_dart[3 * t + j] = label
            edge_of_dart[3 * other[0] + other[1]] = label
            found[label] = ((t, j), other)
    if sorted(found) != list(range(len(found))):
        raise ValueError("edge labels must be 0 .. n_edges - 1")
    edges = [found[label] for label in range(len(found))]

    # Corners around a puncture: crossing side j of corner v_j lands on corner j'+1.
    seen = set()
    links: List[Tuple[Dart, ...]] = []
    for t in range(n_triangles):
        for v in range(3):
            if (t, v) in seen:
                continue
            link = []
            corner = (t, v)
            while corner not in seen:
                seen.add(corner)
                link.append(corner)
                other = partners[3 * corner[0] + corner[1]]
                corner = (other[0], (other[1] + 1) % 3)
            links.append(tuple(link))

    corner_punctures = [0] * (3 * n_triangles)
    link_weights = []
    for index, link in enumerate(links):
        weights = [0] * len(edges)
        for t, v in link:
            corner_punctures[3 * t + v] = index
            weights[edge_of_dart[3 * t + v]] += 1
        link_weights.append(tuple(weights))
    edge_ends = tuple(
        (corner_punctures[3 * t + j], corner_punctures[3 * t + (j + 1) % 3]) for (t, j), _ in edges
    )

    return IdealTriangulation(
        n_triangles=n_triangles,
        partners=tuple(partners),
        edge_of_dart=tuple(edge_of_dart),
        edges=tuple(edges),
        puncture_links=tuple(links),
        corner_punctures=tuple(corner_punctures),
        edge_ends=edge_ends,
        link_weights=tuple(link_weights),
    )


def _glue(gluing: Dict[Dart, Dart], a: Dart, b: Dart) -> None:
    gluing[a] = b
    gluing[b] = a


def polygon_sphere(punctures: int) -> IdealTriangulation:
    """Double of an ideal polygon: top fan T_k = (0, k, k+1), bottom B_k = (0, k+1, k)."""
    n = punctures
    if n < 3:
        raise ValueError("a punctured sphere needs at least three punctures")
    m = n - 2
    top = lambda k: k - 1
    bottom = lambda k: m + k - 1
    gluing: Dict[Dart, Dart] = {}
    for k in range(1, m + 1):
        _glue(gluing, (top(k), 1), (bottom(k), 1))
        if k < m:
            _glue(gluing, (top(k), 2), (top(k + 1), 0))
            _glue(gluing, (bottom(k), 0), (bottom(k + 1), 2))
    _glue(gluing, (top(1), 0), (bottom(1), 2))
    _glue(gluing, (top(m), 2), (bottom(m), 0))
    return _assemble(2 * m, gluing)


def polygon_surface(genus: int) -> IdealTriangulation:
    """Fan triangulation of the 4g-gon with sides glued as a1 b1 a1^-1 b1^-1 ..."""
    n = 4 * genus
    gluing: Dict[Dart, Dart] = {}

    def polygon_side(k: int) -> Dart:
        if k == 0:
            return (0, 0)
        if k == n - 1:
            return (n - 3, 2)
        return (k - 1, 1)

    for k in range(1, n - 2):
        _glue(gluing, (k - 1, 2), (k, 0))
    for i in range(genus):
        _glue(gluing, polygon_side(4 * i), polygon_side(4 * i + 2))
        _glue(gluing, polygon_side(4 * i + 1), polygon_side(4 * i + 3))
    return _assemble(n - 2, gluing)


def stellar_subdivision(tri: IdealTriangulation, triangle: int = 0) -> IdealTriangulation:
    """Add a puncture inside `triangle`, splitting it into three triangles.

    The new triangle A_j = (v_j, v_{j+1}, P) keeps side j of the old triangle as
    its side 0; A_0 reuses the old index and A_1, A_2 are appended.
    """
    n = tri.n_triangles
    pieces = (triangle, n, n + 1)

    def moved(dart: Dart) -> Dart:
        if dart[0] == triangle:
            return (pieces[dart[1]], 0)
        return dart

    gluing: Dict[Dart, Dart] = {}
    for t in range(n):
        for j in range(3):
            gluing[moved((t, j))] = moved(tri.partner((t, j)))
    for j in range(3):
        _glue(gluing, (pieces[j], 1), (pieces[(j + 1) % 3], 2))
    return _assemble(n + 2, gluing)


def build_triangulation(genus: int, punctures: int) -> IdealTriangulation:
    if punctures < 1:
        raise ClosedSurfaceUnsupportedError(
            "closed surfaces are not supported", genus=genus, punctures=punctures
        )
    if genus == 0:
        if punctures < 3:
            raise ComplexityTooLowError("sphere needs at least three punctures", punctures=punctures)
        return polygon_sphere(punctures)
    tri = polygon_surface(genus)
    for _ in range(punctures - 1):
        tri = stellar_subdivision(tri, 0)
    return tri


def flip(tri: IdealTriangulation, edge: int) -> IdealTriangulation:
    """Replace `edge` by the other diagonal of the quadrilateral around it.

    With edge = side j of t and side k of u, the new t has sides (t, j+2),
    (u, k+1) and the new diagonal in that order, the new u has (u, k+2),
    (t, j+1) and the new diagonal. Every edge keeps its label.
    """
    (t, j), (u, k) = tri.edges[edge]
    if t == u:
        raise FlipSequenceError(f"edge {edge} has triangle {t} on both sides", edge=edge)
    moved = {
        (t, (j + 2) % 3): (t, 0),
        (u, (k + 1) % 3): (t, 1),
        (u, (k + 2) % 3): (u, 0),
        (t, (j + 1) % 3): (u, 1),
    }
    gluing: Dict[Dart, Dart] = {}
    labels: Dict[Dart, int] = {}
    _glue(gluing, (t, 2), (u, 2))
    labels[(t, 2)] = labels[(u, 2)] = edge
    for s in range(tri.n_triangles):
        for i in range(3):
            if tri.edge((s, i)) == edge:
                continue
            dart = moved.get((s, i), (s, i))
            gluing[dart] = moved.get(tri.partner((s, i)), tri.partner((s, i)))
            labels[dart] = tri.edge((s, i))
    return _assemble(tri.n_triangles, gluing, labels)
