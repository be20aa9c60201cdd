"""Flip presentations of Dehn twists and twist words.

A curve meeting the triangulation in two points crosses edges x and y and is
the core of the annulus made of the two triangles it visits. Flipping x and
relabeling back is a twist about it. Longer curves are first shortened by a
best-first search over flips of the edges they cross; the twist is then that
annulus move conjugated by the shortening flips.
"""
import heapq
import itertools
from functools import lru_cache
from typing import List, Tuple

from services.metrics_service.app.models.mapping_class import MappingClass
from services.shared.bh_utilities.errors import FlipSequenceError
from services.surface_service.app.core.curves import basic_curves, enumerate_curves, intersection, twist
from services.surface_service.app.core.flips import act_on_weights, flip_weights, is_flippable, isomorphisms
from services.surface_service.app.core.triangulation import IdealTriangulation, flip
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.surface import Surface

SEARCH_LIMIT = 50000


def shorten(
    surface: Surface, curve: NormalCurve, limit: int = SEARCH_LIMIT
) -> Tuple[Tuple[int, ...], IdealTriangulation, Tuple[int, ...]]:
    """Flips after which `curve` has total weight 2, with the triangulation and weights reached."""
    start = surface.triangulation
    weights = tuple(curve.weights)
    counter = itertools.count()
    queue = [(sum(weights), 0, next(counter), start, weights, ())]
    seen = {(start.partners, start.edge_of_dart, weights)}
    while queue:
        total, _, _, tri, weights, flips = heapq.heappop(queue)
        if total == 2:
            return flips, tri, weights
        for edge in range(tri.n_edges):
            if not weights[edge] or not is_flippable(tri, edge):
                continue
            after = flip(tri, edge)
            image = tuple(flip_weights(tri, weights, edge))
            key = (after.partners, after.edge_of_dart, image)
            if key in seen:
                continue
            if len(seen) >= limit:
                raise FlipSequenceError(
                    f"no short position for {curve.key()} within {limit} triangulations", curve=list(curve.weights)
                )
            seen.add(key)
            heapq.heappush(queue, (sum(image), len(flips) + 1, next(counter), after, image, flips + (edge,)))
    raise FlipSequenceError(f"no short position for {curve.key()}", curve=list(curve.weights))


def _acts_like(surface: Surface, candidate: MappingClass, curve: NormalCurve, power: int, tests: List[NormalCurve]) -> bool:
    tri = surface.triangulation
    for test in tests:
        expected = twist(surface, test, curve, power).weights
        if tuple(act_on_weights(tri, candidate.flips, candidate.relabel, test.weights)) != expected:
            return False
    return True


@lru_cache(maxsize=256)
def twist_presentation(surface: Surface, curve: NormalCurve) -> MappingClass:
    """The left twist about `curve` as flips and a relabeling, checked against the path twist."""
    flips, short, weights = shorten(surface, curve)
    x, y = (e for e, w in enumerate(weights) if w)
    annulus = flip(short, x)
    tests = basic_curves(surface)
    if not any(intersection(surface, test, curve) for test in tests):
        tests = enumerate_curves(surface, 2)
    name = f"T[{curve.key()}]"
    for relabel in isomorphisms(annulus, short):
        if any(relabel[e] != e for e in range(short.n_edges) if e not in (x, y)):
            continue
        back = [0] * len(relabel)
        for label, image in enumerate(relabel):
            back[image] = label
        sequence = flips + (x,) + tuple(back[e] for e in reversed(flips))
        candidate = MappingClass.from_flips(surface.id, sequence, relabel, name)
        if _acts_like(surface, candidate, curve, 1, tests):
            return candidate
        if _acts_like(surface, candidate, curve, -1, tests):
            inverse = candidate.inverse()
            return MappingClass.from_flips(surface.id, inverse.flips, inverse.relabel, name)
    raise FlipSequenceError(f"no flip presentation matches the twist about {curve.key()}", curve=list(curve.weights))


def as_flips(surface: Surface, f: MappingClass) -> MappingClass:
    """f as a flip presentation; twist words are compiled letter by letter."""
    if f.is_flip_presented or not f.word:
        return f
    result = MappingClass.identity(surface.id)
    for curve, power in f.word:
        result = result.compose(twist_presentation(surface, curve).power(power))
    return MappingClass.from_flips(surface.id, result.flips, result.relabel, f.name)
