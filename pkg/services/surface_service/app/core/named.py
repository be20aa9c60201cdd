"""Named curves on the default triangulations."""
from typing import Iterable, List, Tuple

from services.surface_service.app.core.curves import canonicalize
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.surface import Surface


def _sphere_edges(surface: Surface):
    n = surface.punctures
    m = n - 2
    tri = surface.triangulation
    polygon = {}
    polygon[(0, 1)] = tri.edge((0, 0))
    polygon[(n - 1, 0)] = tri.edge((m - 1, 2))
    for k in range(1, n - 1):
        polygon[(k, k + 1)] = tri.edge((k - 1, 1))
    top = {k: tri.edge((k - 1, 0)) for k in range(2, n - 1)}
    bottom = {k: tri.edge((m + k - 1, 2)) for k in range(2, n - 1)}
    return polygon, top, bottom


def round_interval(n: int, punctures: Iterable[int]) -> Tuple[int, int]:
    """Cyclic interval [i, j] avoiding puncture 0 that a round curve encloses."""
    chosen = sorted(set(p % n for p in punctures))
    if 0 in chosen:
        chosen = sorted(set(range(n)) - set(chosen))
    if not chosen or len(chosen) < 2 or len(chosen) > n - 2:
        raise ValueError(f"a round curve encloses between 2 and {n - 2} punctures")
    if chosen != list(range(chosen[0], chosen[-1] + 1)):
        raise ValueError(f"punctures {chosen} are not cyclically consecutive")
    return chosen[0], chosen[-1]


def round_curve(surface: Surface, punctures: Iterable[int]) -> NormalCurve:
    """Curve on S(0,n) enclosing a cyclically consecutive set of punctures."""
    if surface.genus != 0:
        raise ValueError("round curves live on punctured spheres")
    n = surface.punctures
    i, j = round_interval(n, punctures)
    polygon, top, bottom = _sphere_edges(surface)
    weights = [0] * surface.triangulation.n_edges
    weights[polygon[(i - 1, i)]] += 1
    weights[polygon[(j, j + 1)] if j + 1 < n else polygon[(n - 1, 0)]] += 1
    for k in range(max(i, 2), min(j, n - 2) + 1):
        weights[top[k]] += 1
        weights[bottom[k]] += 1
    return canonicalize(surface, weights)


def round_curves(surface: Surface) -> List[NormalCurve]:
    n = surface.punctures
    found = {}
    for size in range(2, n - 1):
        for start in range(n):
            try:
                curve = round_curve(surface, [(start + k) % n for k in range(size)])
            except ValueError:
                continue
            found[curve.weights] = curve
    return sorted(found.values(), key=lambda c: (c.total_weight, c.weights))
