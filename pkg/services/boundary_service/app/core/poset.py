"""The adherence preorder on a finite set of end invariants.

Containment of laminations is stored as a boolean matrix; covers, heights and
towers are read off it.
"""
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydotplus import graph_from_edges
from pydotplus.graphviz import Edge, Node

from services.boundary_service.app.models.end_invariant import EndInvariant, Ending
from services.shared.bh_utilities.errors import EnumerationBudgetExceededError
from services.surface_service.app.core.curves import intersection
from services.surface_service.app.core.enumeration import CurveUniverse, multicurves
from services.surface_service.app.core.laminations import leaf_curve_intersection, leaf_intersection
from services.surface_service.app.models.curve import MultiCurve
from services.surface_service.app.models.surface import Surface

Tower = Tuple[EndInvariant, ...]


def _check_budget(count: int, budget: int) -> None:
    if count > budget:
        raise EnumerationBudgetExceededError(f"more than {budget} end invariants", budget=budget)


def invariant_universe(
    surface: Surface, universe: CurveUniverse, endings: Sequence[Ending] = (), budget: int = 20000
) -> List[EndInvariant]:
    """Regular points of every multicurve in the universe, then points carrying the declared endings."""
    size = surface.type.complexity
    regular = multicurves(universe, size, budget)
    found: List[EndInvariant] = []
    for chosen in regular:
        found.append(
            EndInvariant(surface.id, MultiCurve.of(surface.id, [universe.curves[i] for i in chosen]))
        )
    _check_budget(len(found), budget)

    for count in range(1, len(endings) + 1):
        for group in combinations(endings, count):
            if any(
                leaf_intersection(surface, a.lamination, b.lamination) > 0 for a, b in combinations(group, 2)
            ):
                continue
            frontier = {c.weights: c for e in group for c in e.support.frontier}
            free = [
                i for i, c in enumerate(universe.curves)
                if c.weights not in frontier
                and all(leaf_curve_intersection(surface, e.lamination, c) == 0 for e in group)
                and all(intersection(surface, c, f) == 0 for f in frontier.values())
            ]
            allowed = set(free)
            extras: List[Tuple[int, ...]] = [()] + [chosen for chosen in regular if set(chosen) <= allowed]
            for chosen in extras:
                curves = list(frontier.values()) + [universe.curves[i] for i in chosen]
                found.append(EndInvariant(surface.id, MultiCurve.of(surface.id, curves), tuple(group)))
                _check_budget(len(found), budget)
    return found


class AdherencePoset:
    """End invariants ordered by unilateral adherence: a <= b when e(a) is contained in e(b)."""

    def __init__(self, invariants: Sequence[EndInvariant]):
        unique: Dict[Tuple[str, ...], EndInvariant] = {}
        for invariant in invariants:
            unique.setdefault(invariant.keys(), invariant)
        ordered = sorted(unique, key=lambda keys: (len(keys), keys))
        self.invariants: Tuple[EndInvariant, ...] = tuple(unique[k] for k in ordered)
        self._index = {keys: i for i, keys in enumerate(ordered)}
        components = sorted({key for keys in ordered for key in keys})
        column = {key: j for j, key in enumerate(components)}
        member = np.zeros((len(ordered), len(components)), dtype=np.float32)
        for i, keys in enumerate(ordered):
            member[i, [column[key] for key in keys]] = 1.0
        # leq[i, j]: no component of i is missing from j
        leq = (member @ (1.0 - member).T) == 0
        leq.flags.writeable = False
        self.leq = leq
        lt = leq.copy()
        lt[np.diag_indices_from(lt)] = False
        self.lt = lt
        self._heights: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.invariants)

    def index(self, invariant: EndInvariant) -> Optional[int]:
        return self._index.get(invariant.keys())

    @property
    def heights(self) -> np.ndarray:
        """Length of the longest tower starting at each invariant."""
        if self._heights is None:
            heights = np.zeros(len(self.invariants), dtype=int)
            for i in reversed(range(len(self.invariants))):
                above = np.flatnonzero(self.lt[i])
                if above.size:
                    heights[i] = heights[above].max() + 1
            self._heights = heights
        return self._heights

    def height(self, invariant: EndInvariant) -> Optional[int]:
        i = self.index(invariant)
        return None if i is None else int(self.heights[i])

    def towers(self, invariant: EndInvariant, limit: int = 10) -> List[Tower]:
        """Longest towers from the invariant, at most `limit` of them, in index order."""
        start = self.index(invariant)
        if start is None:
            return []
        heights = self.heights
        found: List[Tower] = []

        def extend(chain: List[int]) -> None:
            if len(found) >= limit:
                return
            current = chain[-1]
            if heights[current] == 0:
                found.append(tuple(self.invariants[i] for i in chain))
                return
            for j in np.flatnonzero(self.lt[current]):
                if heights[j] == heights[current] - 1:
                    chain.append(int(j))
                    extend(chain)
                    chain.pop()

        extend([start])
        return found

    def chain_length(self, bottom: EndInvariant, top: EndInvariant) -> Optional[int]:
        """Length of the longest tower from bottom that ends at top; None when top does not adhere to bottom."""
        i, j = self.index(bottom), self.index(top)
        if i is None or j is None or not self.leq[i, j]:
            return None
        between = np.flatnonzero(self.leq[i] & self.leq[:, j])
        longest = {int(j): 0}
        for k in sorted(between, reverse=True):
            k = int(k)
            if k == j:
                continue
            steps = [longest[int(m)] + 1 for m in np.flatnonzero(self.lt[k]) if int(m) in longest]
            if steps:
                longest[k] = max(steps)
        return longest.get(int(i))

    def covers(self) -> np.ndarray:
        """cover[i, j]: j sits directly above i with nothing in between."""
        lt = self.lt.astype(np.float32)
        return self.lt & ~((lt @ lt) > 0)

    def to_dot(self, labels: Optional[Sequence[str]] = None) -> str:
        """Hasse diagram drawn bottom to top."""
        labels = list(labels) if labels is not None else [inv.name() for inv in self.invariants]
        cover = self.covers()
        graph = graph_from_edges([], directed=True)
        graph.set_rankdir("BT")
        for i, label in enumerate(labels):
            graph.add_node(Node(i, label=f'"{label}"'))
        for i, j in zip(*np.nonzero(cover)):
            graph.add_edge(Edge(int(i), int(j)))
        return graph.to_string()
