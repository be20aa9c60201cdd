"""Finite universes of curves and multicurves for desk-scale searches."""
from dataclasses import dataclass
from typing import FrozenSet, List, Sequence, Tuple

from services.shared.bh_utilities.errors import EnumerationBudgetExceededError
from services.surface_service.app.core.curves import enumerate_curves, intersection
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.surface import Surface


@dataclass(frozen=True)
class CurveUniverse:
    """Curves plus their pairwise disjointness graph."""

    surface_id: str
    curves: Tuple[NormalCurve, ...]
    disjoint: FrozenSet[Tuple[int, int]]

    def index(self, curve: NormalCurve) -> int:
        for i, c in enumerate(self.curves):
            if c.weights == curve.weights:
                return i
        raise KeyError(curve.weights)

    def are_disjoint(self, i: int, j: int) -> bool:
        return i == j or (min(i, j), max(i, j)) in self.disjoint

    def neighbours(self, i: int) -> List[int]:
        return [j for j in range(len(self.curves)) if j != i and self.are_disjoint(i, j)]


def pants_decompositions(surface: Surface, curves: Sequence[NormalCurve], limit: int = 10000) -> List[Tuple[NormalCurve, ...]]:
    """Pairwise disjoint families of 3g-3+p curves drawn from `curves`."""
    size = surface.type.complexity
    graph = _disjointness(surface, curves)
    found: List[Tuple[NormalCurve, ...]] = []

    def extend(chosen: List[int], start: int) -> None:
        if len(found) >= limit:
            return
        if len(chosen) == size:
            found.append(tuple(curves[i] for i in chosen))
            return
        for j in range(start, len(curves)):
            if all((min(i, j), max(i, j)) in graph for i in chosen):
                chosen.append(j)
                extend(chosen, j + 1)
                chosen.pop()

    extend([], 0)
    return found


def _disjointness(surface: Surface, curves: Sequence[NormalCurve]) -> FrozenSet[Tuple[int, int]]:
    pairs = set()
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            if curves[i].weights != curves[j].weights and intersection(surface, curves[i], curves[j]) == 0:
                pairs.add((i, j))
    return frozenset(pairs)


def build_universe(surface: Surface, weight_cap: int) -> CurveUniverse:
    """Every essential curve whose edge weights are all at most weight_cap, with its disjointness graph."""
    curves = tuple(enumerate_curves(surface, weight_cap))
    return CurveUniverse(surface.id, curves, _disjointness(surface, curves))


def multicurves(universe: CurveUniverse, max_size: int, budget: int) -> List[Tuple[int, ...]]:
    """All nonempty pairwise disjoint index sets of size <= max_size."""
    result: List[Tuple[int, ...]] = []
    n = len(universe.curves)

    def extend(chosen: List[int], start: int) -> None:
        if chosen:
            result.append(tuple(chosen))
            if len(result) > budget:
                raise EnumerationBudgetExceededError(
                    f"more than {budget} multicurves", budget=budget
                )
        if len(chosen) == max_size:
            return
        for j in range(start, n):
            if all(universe.are_disjoint(i, j) for i in chosen):
                chosen.append(j)
                extend(chosen, j + 1)
                chosen.pop()

    extend([], 0)
    return result
