"""Closed dart paths on the dual graph of a triangulation.

A closed curve is stored as the cyclic sequence of darts it crosses. The
reduced cyclic path of an essential simple closed curve is unique, so curves
are compared through their edge crossing counts and ordered through a
canonical rotation.
"""
from collections import defaultdict
from typing import Dict, Iterator, List, NamedTuple, Sequence, Tuple

from services.surface_service.app.core.triangulation import Dart, IdealTriangulation

Path = Tuple[Dart, ...]


class PathTooLongError(Exception):
    """Raised when a path grows past the caller's dart budget."""

    def __init__(self, length: int, budget: int):
        super().__init__(f"path length {length} exceeds budget {budget}")
        self.length = length
        self.budget = budget


def entry_side(tri: IdealTriangulation, previous: Dart) -> int:
    return tri.partner(previous)[1]


def turns_right(entry: int, exit_side: int) -> bool:
    """Leaving through side entry+1 cuts corner v_{entry+1}, which lies on the right."""
    return exit_side == (entry + 1) % 3


def turn_sequence(tri: IdealTriangulation, path: Sequence[Dart]) -> List[bool]:
    """Right-turn flags; flag k describes the turn made in the triangle entered by dart k."""
    n = len(path)
    return [turns_right(entry_side(tri, path[k]), path[(k + 1) % n][1]) for k in range(n)]


def is_valid_path(tri: IdealTriangulation, path: Sequence[Dart]) -> bool:
    n = len(path)
    if n == 0:
        return False
    for k in range(n):
        landing = tri.partner(path[k])
        following = path[(k + 1) % n]
        if following[0] != landing[0] or following[1] == landing[1]:
            return False
    return True


def reverse_path(tri: IdealTriangulation, path: Sequence[Dart]) -> Path:
    return tuple(tri.partner(d) for d in reversed(path))


def reduce_cyclic(tri: IdealTriangulation, path: Sequence[Dart]) -> Path:
    """Free and cyclic reduction: a dart followed by its partner cancels."""
    stack: List[Dart] = []
    for dart in path:
        if stack and tri.partner(stack[-1]) == dart:
            stack.pop()
        else:
            stack.append(dart)
    start, end = 0, len(stack)
    while end - start >= 2 and tri.partner(stack[end - 1]) == stack[start]:
        start += 1
        end -= 1
    return tuple(stack[start:end])


def edge_weights(tri: IdealTriangulation, path: Sequence[Dart]) -> Tuple[int, ...]:
    weights = [0] * tri.n_edges
    for dart in path:
        weights[tri.edge(dart)] += 1
    return tuple(weights)


def _least_rotation(path: Sequence[Dart]) -> Path:
    # Booth's algorithm on the cyclic sequence.
    seq = list(path)
    n = len(seq)
    doubled = seq + seq
    failure = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = doubled[j]
        i = failure[j - k - 1]
        while i != -1 and sj != doubled[k + i + 1]:
            if sj < doubled[k + i + 1]:
                k = j - i - 1
            i = failure[i]
        if sj != doubled[k + i + 1]:
            if sj < doubled[k]:
                k = j
            failure[j - k] = -1
        else:
            failure[j - k] = i + 1
    return tuple(doubled[k:k + n])


def canonical_rotation(tri: IdealTriangulation, path: Sequence[Dart]) -> Tuple[Path, bool]:
    """Least rotation over both orientations; the flag is True when the reverse won."""
    forward = _least_rotation(path)
    backward = _least_rotation(reverse_path(tri, path))
    if backward < forward:
        return backward, True
    return forward, False


def rotate_to(path: Sequence[Dart], index: int) -> Path:
    return tuple(path[index:]) + tuple(path[:index])


def dart_positions(path: Sequence[Dart]) -> Dict[Dart, List[int]]:
    positions: Dict[Dart, List[int]] = defaultdict(list)
    for index, dart in enumerate(path):
        positions[dart].append(index)
    return positions


class SharedSegment(NamedTuple):
    """A maximal run where x and y cross the same darts in the same direction."""

    x_start: int
    y_start: int
    length: int
    x_starts_left: bool
    crosses: bool


def shared_segments(
    tri: IdealTriangulation, x: Sequence[Dart], y: Sequence[Dart]
) -> Iterator[SharedSegment]:
    """Maximal common dart runs of two cyclic paths.

    x enters the run from the left of y when it turns left onto the common
    dart, and leaves to the right when it turns right off the last one; the run
    is a transverse crossing exactly when the two sides differ.
    """
    nx, ny = len(x), len(y)
    index = dart_positions(y)
    limit = nx + ny
    for i in range(nx):
        for j in index.get(x[i], ()):
            if x[i - 1] == y[j - 1]:
                continue
            m = 1
            while m < limit and x[(i + m) % nx] == y[(j + m) % ny]:
                m += 1
            if m >= limit:
                raise ValueError("paths share a full period; they are the same curve")
            common_exit = x[i][1]
            x_entry = entry_side(tri, x[i - 1])
            starts_left = x_entry == (common_exit + 1) % 3
            last_entry = entry_side(tri, x[(i + m - 1) % nx])
            ends_right = x[(i + m) % nx][1] == (last_entry + 1) % 3
            yield SharedSegment(i, j, m, starts_left, starts_left == ends_right)


def path_intersection(tri: IdealTriangulation, x: Sequence[Dart], y: Sequence[Dart]) -> int:
    """Geometric intersection number of two reduced cyclic paths of simple curves."""
    if edge_weights(tri, x) == edge_weights(tri, y):
        return 0
    count = 0
    for target in (y, reverse_path(tri, y)):
        count += sum(1 for segment in shared_segments(tri, x, target) if segment.crosses)
    return count


def twist_path(
    tri: IdealTriangulation,
    x: Sequence[Dart],
    core: Sequence[Dart],
    power: int,
    budget: int = 0,
) -> Path:
    """Image of x under the power-th left Dehn twist about the simple curve `core`.

    At every crossing the core loop is spliced in, starting from the triangle
    where x joins it, in the direction a left turn onto the core would take.
    """
    result: Path = tuple(x)
    if power == 0:
        return result
    left = power > 0
    reverse_core = reverse_path(tri, core)
    for _ in range(abs(power)):
        inserts: Dict[int, List[Dart]] = defaultdict(list)
        for oriented in (tuple(core), reverse_core):
            for segment in shared_segments(tri, result, oriented):
                if not segment.crosses:
                    continue
                loop = rotate_to(oriented, segment.y_start)
                if segment.x_starts_left != left:
                    loop = reverse_path(tri, loop)
                inserts[segment.x_start].extend(loop)
        if not inserts:
            return result
        spliced: List[Dart] = []
        for i, dart in enumerate(result):
            if i in inserts:
                spliced.extend(inserts[i])
            spliced.append(dart)
        result = reduce_cyclic(tri, spliced)
        if budget and len(result) > budget:
            raise PathTooLongError(len(result), budget)
    return result
