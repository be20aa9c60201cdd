"""Flip sequences and their action on normal coordinates and shears.

A flip presentation (flips, relabel) runs the flips from the default
triangulation and ends at a triangulation whose edge l is identified with
edge relabel[l] of the default one. Coordinates are carried along the flips
and then moved to position relabel[l].
"""
from functools import lru_cache
from typing import Callable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from services.shared.bh_utilities.errors import FlipSequenceError
from services.surface_service.app.core.triangulation import IdealTriangulation, flip


class Quad(NamedTuple):
    """Edges around a flippable edge: `forward` sits at (t, j+1) and (u, k+1), `backward` at (t, j+2) and (u, k+2)."""

    diagonal: int
    forward: Tuple[int, int]
    backward: Tuple[int, int]


def quad(tri: IdealTriangulation, edge: int) -> Quad:
    (t, j), (u, k) = tri.edges[edge]
    if t == u:
        raise FlipSequenceError(f"edge {edge} has triangle {t} on both sides", edge=edge)
    return Quad(
        edge,
        (tri.edge((t, (j + 1) % 3)), tri.edge((u, (k + 1) % 3))),
        (tri.edge((t, (j + 2) % 3)), tri.edge((u, (k + 2) % 3))),
    )


def is_flippable(tri: IdealTriangulation, edge: int) -> bool:
    (t, _), (u, _) = tri.edges[edge]
    return t != u


def flip_weights(tri: IdealTriangulation, weights: Sequence, edge: int) -> list:
    """Normal coordinates after flipping `edge`; integers stay integers, measures stay real."""
    q = quad(tri, edge)
    result = list(weights)
    opposite = weights[q.forward[0]] + weights[q.forward[1]]
    other = weights[q.backward[0]] + weights[q.backward[1]]
    result[edge] = max(opposite, other) - weights[edge]
    return result


def flip_shears(tri: IdealTriangulation, shears: Sequence[float], edge: int) -> np.ndarray:
    """Shears after flipping `edge`: z -> -z, forward sides gain log(1+e^z), backward sides lose log(1+e^-z)."""
    q = quad(tri, edge)
    z = float(shears[edge])
    result = np.array(shears, dtype=float)
    result[edge] = -z
    for e in q.forward:
        result[e] += np.logaddexp(0.0, z)
    for e in q.backward:
        result[e] -= np.logaddexp(0.0, -z)
    return result


@lru_cache(maxsize=512)
def triangulations_along(tri: IdealTriangulation, flips: Tuple[int, ...]) -> Tuple[IdealTriangulation, ...]:
    """The triangulation before each flip, then the final one."""
    along = [tri]
    for step, edge in enumerate(flips):
        if not 0 <= edge < tri.n_edges:
            raise FlipSequenceError(f"flip {step} names edge {edge}, surface has {tri.n_edges}", step=step)
        try:
            along.append(flip(along[-1], edge))
        except FlipSequenceError as e:
            raise FlipSequenceError(f"flip {step}: {e.message}", step=step, edge=edge)
    return tuple(along)


def _carry(
    tri: IdealTriangulation,
    flips: Tuple[int, ...],
    relabel: Sequence[int],
    values: Sequence,
    step: Callable,
) -> list:
    along = triangulations_along(tri, tuple(flips))
    for current, edge in zip(along, flips):
        values = step(current, values, edge)
    result = [None] * len(values)
    for label, value in enumerate(values):
        result[relabel[label] if relabel else label] = value
    return result


def act_on_weights(tri: IdealTriangulation, flips: Tuple[int, ...], relabel: Sequence[int], weights: Sequence) -> list:
    return _carry(tri, flips, relabel, list(weights), flip_weights)


def act_on_shears(
    tri: IdealTriangulation, flips: Tuple[int, ...], relabel: Sequence[int], shears: Sequence[float]
) -> np.ndarray:
    return np.asarray(_carry(tri, flips, relabel, np.asarray(shears, dtype=float), flip_shears), dtype=float)


def _extend(
    source: IdealTriangulation, target: IdealTriangulation, image: int, rotation: int
) -> Optional[Tuple[int, ...]]:
    """Edge map of the orientation preserving isomorphism sending triangle 0 to `image`, side j to side j+rotation."""
    placed = {0: (image, rotation)}
    used = {image}
    stack = [0]
    while stack:
        s = stack.pop()
        u, r = placed[s]
        for j in range(3):
            s2, j2 = source.partner((s, j))
            u2, k2 = target.partner((u, (j + r) % 3))
            r2 = (k2 - j2) % 3
            if s2 in placed:
                if placed[s2] != (u2, r2):
                    return None
            elif u2 in used:
                return None
            else:
                placed[s2] = (u2, r2)
                used.add(u2)
                stack.append(s2)
    if len(placed) != source.n_triangles:
        return None
    edge_map = [-1] * source.n_edges
    for s, (u, r) in placed.items():
        for j in range(3):
            edge_map[source.edge((s, j))] = target.edge((u, (j + r) % 3))
    return tuple(edge_map)


def isomorphisms(source: IdealTriangulation, target: IdealTriangulation) -> Iterator[Tuple[int, ...]]:
    """Edge maps (source label -> target label) of every orientation preserving isomorphism."""
    if source.n_triangles != target.n_triangles or source.n_edges != target.n_edges:
        return
    seen = set()
    for image in range(target.n_triangles):
        for rotation in range(3):
            edge_map = _extend(source, target, image, rotation)
            if edge_map is not None and edge_map not in seen:
                seen.add(edge_map)
                yield edge_map


def check_presentation(tri: IdealTriangulation, flips: Sequence[int], relabel: Sequence[int]) -> None:
    """Refuse flips that cannot be run and relabelings that are not an isomorphism back to `tri`."""
    if sorted(relabel) != list(range(tri.n_edges)):
        raise FlipSequenceError(
            f"relabel must be a permutation of the {tri.n_edges} edges", relabel=list(relabel)
        )
    final = triangulations_along(tri, tuple(flips))[-1]
    if tuple(relabel) not in set(isomorphisms(final, tri)):
        raise FlipSequenceError(
            "relabel is not an isomorphism from the flipped triangulation back to the original",
            flips=list(flips),
            relabel=list(relabel),
        )


def compose_presentations(
    outer: Tuple[Tuple[int, ...], Tuple[int, ...]], inner: Tuple[Tuple[int, ...], Tuple[int, ...]]
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """(flips, relabel) of outer o inner: inner acts first."""
    (f_flips, f_relabel), (g_flips, g_relabel) = outer, inner
    n = len(f_relabel)
    back = [0] * n
    for label, image in enumerate(g_relabel):
        back[image] = label
    flips = tuple(g_flips) + tuple(back[e] for e in f_flips)
    return flips, tuple(f_relabel[g_relabel[label]] for label in range(n))


def invert_presentation(flips: Sequence[int], relabel: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    back = [0] * len(relabel)
    for label, image in enumerate(relabel):
        back[image] = label
    return tuple(relabel[e] for e in reversed(flips)), tuple(back)


def cancel_repeats(flips: Sequence[int]) -> Tuple[int, ...]:
    """Drop adjacent pairs flipping the same edge twice."""
    kept: List[int] = []
    for edge in flips:
        if kept and kept[-1] == edge:
            kept.pop()
        else:
            kept.append(edge)
    return tuple(kept)
