"""Arcs in pairs of pants and how closed curves pass through them.

A pants decomposition is a cut along pairwise disjoint curves whose pieces
are all pairs of pants. An arc class in a pants is named by its endpoint
holes: e(i, j) joins two holes, s(i) returns to hole i around the other two.
A closed curve is put in minimal position with the cut curves, and each stretch
between consecutive crossings is a passage through one pants.
"""
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import logsumexp

from services.surface_service.app.core.cutting import CutResult, Piece, other_side
from services.surface_service.app.core.paths import Path
from services.surface_service.app.models.surface import Surface

Hole = Tuple[str, object]


@dataclass(frozen=True, order=True)
class PantsArc:
    """Arc class in one pants, identified by the pants' hole labels."""

    holes: Tuple[Hole, Hole, Hole]
    start: int
    end: int

    @property
    def is_loop(self) -> bool:
        return self.start == self.end

    def label(self) -> str:
        names = [_hole_name(h) for h in self.holes]
        if self.is_loop:
            return f"s[{names[self.start]}|{','.join(names)}]"
        return f"e[{names[self.start]}-{names[self.end]}|{','.join(names)}]"


def _hole_name(hole: Hole) -> str:
    kind, value = hole
    if kind == "puncture":
        return f"p{value}"
    weights, side = value
    return "c(" + ",".join(str(w) for w in weights) + ")" + side


def pants_holes(cut: CutResult, piece: Piece) -> Tuple[Hole, Hole, Hole]:
    holes: List[Hole] = [("curve", (cut.curves[i].weights, s)) for i, s in piece.sides]
    holes.extend(("puncture", p) for p in piece.punctures)
    if len(holes) != 3 or piece.type.genus != 0:
        raise ValueError(f"piece {piece.index} is not a pair of pants")
    return tuple(sorted(holes))


def arcs_of_pants(holes: Tuple[Hole, Hole, Hole], allowed: Sequence[Hole]) -> List[PantsArc]:
    """Arc classes whose endpoints lie on the allowed curve holes."""
    ends = [k for k, h in enumerate(holes) if h[0] == "curve" and h in allowed]
    result = [PantsArc(holes, k, k) for k in ends]
    for a in range(len(ends)):
        for b in range(a + 1, len(ends)):
            result.append(PantsArc(holes, ends[a], ends[b]))
    return sorted(result)


def arc_arc_intersection(a: PantsArc, b: PantsArc) -> int:
    if a.holes != b.holes or a == b:
        return 0
    if a.is_loop and b.is_loop:
        return 2
    if a.is_loop or b.is_loop:
        loop, edge = (a, b) if a.is_loop else (b, a)
        return 0 if loop.start in (edge.start, edge.end) else 1
    return 0


# Passages -----------------------------------------------------------------


def _boundary_layout(weights: Sequence[int]) -> Tuple[List[int], int]:
    offsets = [0, 2 * weights[0] + 1, 2 * weights[0] + 2 * weights[1] + 2]
    return offsets, offsets[2] + 2 * weights[2] + 1


def _between(x: int, a: int, b: int, n: int) -> bool:
    """x strictly inside the cyclic interval running forward from a to b."""
    return 0 < (x - a) % n < (b - a) % n


class _TriangleChords:
    """Arc endpoints of the cut multicurve inside one triangle."""

    def __init__(self, cut: CutResult, triangle: int):
        tri = cut.surface.triangulation
        self.weights = [cut.weights[e] for e in tri.side_edges(triangle)]
        self.offsets, self.size = _boundary_layout(self.weights)
        self.arcs = []
        corners = cut.corners[triangle]
        for v in range(3):
            before = (v - 1) % 3
            for d in range(corners[v]):
                on_v = self.offsets[v] + 2 * d + 1
                on_before = self.offsets[before] + 2 * (self.weights[before] - 1 - d) + 1
                self.arcs.append(((triangle, v, d), on_before, on_v))
        self._cache: Dict[Tuple[int, int], List] = {}

    def point(self, side: int, segment: int) -> int:
        return self.offsets[side] + 2 * segment

    def crossed(self, x: int, y: int) -> List[Tuple[Tuple[int, int, int], bool]]:
        """Arcs separating boundary points x and y, nearest to x first.

        Each entry carries whether x lies on the corner side of the arc.
        """
        key = (x, y)
        if key in self._cache:
            return self._cache[key]
        hits = []
        for arc, start, end in self.arcs:
            if _between(x, start, end, self.size) != _between(y, start, end, self.size):
                x_toward = _between(x, start, end, self.size)
                span = (end - start) % self.size if x_toward else (start - end) % self.size
                hits.append((span, arc, x_toward))
        hits.sort()
        result = [(arc, toward) for _, arc, toward in hits]
        self._cache[key] = result
        return result


@dataclass(frozen=True)
class Passage:
    piece: int
    enter: Tuple[int, str]
    leave: Tuple[int, str]


def minimal_position_events(cut: CutResult, path: Path) -> List[Tuple[int, str, str]]:
    """Crossings of a closed path with the cut curves in minimal position.

    Each event is (curve index, side left, side entered), in path order.
    """
    surface: Surface = cut.surface
    tri = surface.triangulation
    n = len(path)
    if n == 0 or not cut.curves:
        return []
    # Rotate to an edge the cut curves never cross, when there is one.
    start = 0
    for k, dart in enumerate(path):
        if cut.weights[tri.edge(dart)] == 0:
            start = k
            break
    path = tuple(path[start:]) + tuple(path[:start])

    chords: Dict[int, _TriangleChords] = {}

    def chords_of(t: int) -> _TriangleChords:
        if t not in chords:
            chords[t] = _TriangleChords(cut, t)
        return chords[t]

    widths = [cut.weights[tri.edge(d)] for d in path]

    def transition(k: int, a: int, b: int) -> int:
        # Triangle entered by dart k, from segment a of dart k to segment b of dart k+1.
        landing = tri.partner(path[k])
        nxt = path[(k + 1) % n]
        table = chords_of(landing[0])
        x = table.point(landing[1], widths[k] - a)
        y = table.point(nxt[1], b)
        return len(table.crossed(x, y))

    best_total = None
    best_choice: Optional[List[int]] = None
    for first in range(widths[0] + 1):
        cost = {first: 0}
        back: List[Dict[int, int]] = []
        for k in range(n - 1):
            nxt_cost: Dict[int, int] = {}
            choice: Dict[int, int] = {}
            for b in range(widths[k + 1] + 1):
                for a, c in cost.items():
                    value = c + transition(k, a, b)
                    if b not in nxt_cost or value < nxt_cost[b]:
                        nxt_cost[b] = value
                        choice[b] = a
            back.append(choice)
            cost = nxt_cost
        total = None
        last = None
        for a, c in cost.items():
            value = c + transition(n - 1, a, first)
            if total is None or value < total:
                total, last = value, a
        if best_total is None or total < best_total:
            best_total = total
            sigma = [0] * n
            sigma[n - 1] = last
            for k in range(n - 2, -1, -1):
                sigma[k] = back[k][sigma[k + 1]]
            best_choice = sigma
        if best_total == 0:
            break

    events: List[Tuple[int, str, str]] = []
    for k in range(n):
        landing = tri.partner(path[k])
        nxt = path[(k + 1) % n]
        table = chords_of(landing[0])
        x = table.point(landing[1], widths[k] - best_choice[k])
        y = table.point(nxt[1], best_choice[(k + 1) % n])
        for arc, x_toward in table.crossed(x, y):
            index, toward = cut.arcs[arc]
            left = toward if x_toward else other_side(toward)
            events.append((index, left, other_side(left)))
    return events


def passages(cut: CutResult, path: Path) -> List[Passage]:
    events = minimal_position_events(cut, path)
    result = []
    for m, (index, _, entered) in enumerate(events):
        nxt_index, nxt_left, _ = events[(m + 1) % len(events)]
        piece = cut.piece_of_side(index, entered)
        result.append(Passage(piece.index, (index, entered), (nxt_index, nxt_left)))
    return result


def arc_curve_intersection(cut: CutResult, arc: PantsArc, path: Path) -> int:
    """Intersection of a pants arc with a closed curve given by its dart path."""
    total = 0
    for passage in passages(cut, path):
        piece = cut.pieces[passage.piece]
        holes = pants_holes(cut, piece)
        if holes != arc.holes:
            continue
        enter = holes.index(("curve", (cut.curves[passage.enter[0]].weights, passage.enter[1])))
        leave = holes.index(("curve", (cut.curves[passage.leave[0]].weights, passage.leave[1])))
        total += arc_arc_intersection(arc, PantsArc(holes, min(enter, leave), max(enter, leave)))
    return total


# Lengths ------------------------------------------------------------------


def _log_cosh(x: float) -> float:
    return x + math.log1p(math.exp(-2.0 * x)) - math.log(2.0)


def _log_sinh(x: float) -> float:
    if x <= 0.0:
        return -math.inf
    return x + math.log1p(-math.exp(-2.0 * x)) - math.log(2.0)


def _arccosh_from_log(y: float) -> float:
    if y <= 0.0:
        return 0.0
    return y + math.log1p(math.sqrt(max(0.0, 1.0 - math.exp(-2.0 * y))))


def arc_length(arc: PantsArc, hole_lengths: Sequence[float]) -> float:
    """Orthogeodesic length from the pants' boundary lengths (0 for punctures).

    Both ends must lie on geodesic boundary curves.
    """
    half = [0.5 * float(value) for value in hole_lengths]
    log_c = [_log_cosh(h) for h in half]
    log_s = [_log_sinh(h) for h in half]
    i, j = arc.start, arc.end
    if arc.is_loop:
        if math.isinf(log_s[i]):
            raise ValueError("loop arc based at a cusp")
        terms = [2 * log_c[0], 2 * log_c[1], 2 * log_c[2], math.log(2.0) + sum(log_c)]
        log_total = float(logsumexp(terms))
        log_inner = log_total + math.log1p(-math.exp(-log_total))
        return 2.0 * _arccosh_from_log(0.5 * log_inner - log_s[i])
    k = 3 - i - j
    if math.isinf(log_s[i]) or math.isinf(log_s[j]):
        raise ValueError("arc ends at a cusp")
    log_value = float(np.logaddexp(log_c[k], log_c[i] + log_c[j])) - log_s[i] - log_s[j]
    return _arccosh_from_log(log_value)
