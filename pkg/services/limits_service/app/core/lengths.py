"""Length tables along a metric sequence.

The length of c at m_i = g_i . m_0 is read on the pushed shears of g_i . m_0
along the short path of c. Classes that do not compile to flips fall back to
the pullback identity: the length of g_i^-1(c) at m_0, with the dart path of
g_i^-1(c) capped by a budget.
"""
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from services.limits_service.app.core.candidates import CandidateSet
from services.limits_service.app.models.sequence import Factor, LengthTable, TeichSequence
from services.metrics_service.app.core.action import apply_to_path
from services.metrics_service.app.core.holonomy import check_complete, path_length
from services.metrics_service.app.core.presentation import as_flips
from services.metrics_service.app.models.shear import ShearStructure
from services.shared.bh_utilities.errors import FlipSequenceError
from services.shared.bh_utilities.parallel import ordered_map
from services.surface_service.app.core.arcs import arc_length
from services.surface_service.app.core.curves import intersection
from services.surface_service.app.core.flips import act_on_shears, act_on_weights
from services.surface_service.app.core.paths import Path, PathTooLongError
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.lamination import ArcLeaf
from services.surface_service.app.models.surface import Surface


@lru_cache(maxsize=64)
def _pushed(
    surface: Surface, factors: Tuple[Factor, ...], base: ShearStructure, i_max: int
) -> Tuple[np.ndarray, ...]:
    tri = surface.triangulation
    steps = [as_flips(surface, f.mapping_class.power(1 if f.rate > 0 else -1)) for f in factors]

    def push(shears: np.ndarray, step, times: int) -> np.ndarray:
        for _ in range(times):
            shears = act_on_shears(tri, step.flips, step.relabel, shears)
        return shears

    inner = np.asarray(base.shears, dtype=float)
    found = []
    for i in range(i_max + 1):
        if i:
            inner = push(inner, steps[-1], abs(factors[-1].rate))
        shears = inner
        for factor, step in zip(reversed(factors[:-1]), reversed(steps[:-1])):
            shears = push(shears, step, abs(factor.rate) * i)
        found.append(shears)
    return tuple(found)


def fixes_all(surface: Surface, factor: Factor, curves: Sequence[NormalCurve]) -> bool:
    f = factor.mapping_class
    if f.is_flip_presented:
        tri = surface.triangulation
        return all(tuple(act_on_weights(tri, f.flips, f.relabel, c.weights)) == c.weights for c in curves)
    return all(intersection(surface, c, core) == 0 for c in curves for core in f.curves())


def pushed_shears(
    surface: Surface, seq: TeichSequence, i_max: int, curves: Sequence[NormalCurve] = ()
) -> Optional[Dict[int, np.ndarray]]:
    """Shears of m_i for every index, or None when a factor has no flip presentation.

    Outermost factors fixing every curve in `curves` leave their lengths alone and are skipped.
    """
    if seq.is_explicit:
        return {i: np.asarray(seq.metrics[i].shears, dtype=float) for i in seq.indices(i_max)}
    factors = list(seq.factors)
    while factors and curves and fixes_all(surface, factors[0], curves):
        factors.pop(0)
    if not factors:
        return {i: np.asarray(seq.base.shears, dtype=float) for i in seq.indices(i_max)}
    try:
        along = _pushed(surface, tuple(factors), seq.base, max(seq.indices(i_max), default=0))
    except FlipSequenceError:
        return None
    return {i: along[i] for i in seq.indices(i_max)}


def pulled_back_paths(
    surface: Surface, seq: TeichSequence, curve: NormalCurve, indices: Sequence[int], budget: int
) -> Dict[int, Path]:
    """g_i^-1(c) for every index, stopping at the first one over budget."""
    paths: Dict[int, Path] = {}
    try:
        if seq.is_explicit or not seq.factors:
            return {i: curve.path for i in indices}
        first, rest = seq.factors[0], seq.factors[1:]
        step = first.mapping_class.power(-1 if first.rate > 0 else 1)
        inner = curve.path
        reached = 0
        for i in indices:
            for _ in range(abs(first.rate) * (i - reached)):
                inner = apply_to_path(surface, step, inner, budget)
            reached = i
            path = inner
            for factor in rest:
                path = apply_to_path(surface, factor.mapping_class.power(-factor.rate * i), path, budget)
            paths[i] = path
    except PathTooLongError:
        pass
    return paths


def _metric_at(seq: TeichSequence, i: int) -> ShearStructure:
    return seq.metrics[i] if seq.is_explicit else seq.base


def _hole_lengths(arc: ArcLeaf, traced: Dict[Tuple[int, ...], Dict[int, float]], i: int) -> Tuple[float, ...]:
    return tuple(
        0.0 if kind == "puncture" else traced[value[0]][i] for kind, value in arc.arc.holes
    )


def length_table(
    surface: Surface, seq: TeichSequence, candidates: CandidateSet, i_max: int, budget: int
) -> LengthTable:
    """Lengths of all candidates; arcs are measured in their pants from the lengths of its holes.

    The dart budget only applies when some factor has no flip presentation.
    """
    indices = seq.indices(i_max)
    for metric in (seq.metrics if seq.is_explicit else (seq.base,)):
        check_complete(surface, metric.shears)
    watched: Dict[Tuple[int, ...], NormalCurve] = {c.weights: c for c in candidates.curves}
    for arc in candidates.arcs:
        for curve in arc.frame:
            watched.setdefault(curve.weights, curve)
    curves: List[NormalCurve] = list(watched.values())
    pushed = pushed_shears(surface, seq, i_max, curves)

    def trace(curve: NormalCurve) -> Dict[int, float]:
        if pushed is not None:
            return {i: path_length(surface, shears, curve.path) for i, shears in pushed.items()}
        paths = pulled_back_paths(surface, seq, curve, indices, budget)
        return {i: path_length(surface, _metric_at(seq, i).shears, p) for i, p in paths.items()}

    traced = dict(zip(watched.keys(), ordered_map(trace, curves)))
    reached = [i for i in indices if all(i in lengths for lengths in traced.values())]

    rows = []
    for i in reached:
        row = [traced[c.weights][i] for c in candidates.curves]
        row.extend(arc_length(arc.arc, _hole_lengths(arc, traced, i)) for arc in candidates.arcs)
        rows.append(tuple(row))
    return LengthTable(
        indices=tuple(reached),
        keys=candidates.keys,
        values=tuple(rows),
        truncated_at=None if len(reached) == len(indices) else (reached[-1] if reached else -1),
    )


def as_array(table: LengthTable) -> np.ndarray:
    return np.asarray(table.values, dtype=float).reshape(len(table.indices), len(table.keys))
