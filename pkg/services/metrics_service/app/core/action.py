"""Mapping class action on curves, multicurves and laminations.

Twist words act on dart paths by splicing in the twisting curve; flip
presentations act on normal coordinates one flip at a time.
"""
from dataclasses import replace
from typing import Sequence, Tuple

from services.shared.bh_utilities.errors import NotConnectedError, SurfaceMismatchError
from services.metrics_service.app.models.mapping_class import MappingClass
from services.surface_service.app.core.curves import canonicalize, curve_from_path, twist_raw
from services.surface_service.app.core.flips import act_on_weights
from services.surface_service.app.core.paths import Path, PathTooLongError, edge_weights, reduce_cyclic
from services.surface_service.app.core.tracing import trace_components
from services.surface_service.app.models.curve import MultiCurve, NormalCurve
from services.surface_service.app.models.lamination import (
    ArcLeaf,
    ClosedLeaf,
    IrrationalLeaf,
    MeasuredLamination,
)
from services.surface_service.app.models.surface import Surface


def check_on_surface(surface: Surface, f: MappingClass, *ids: str) -> None:
    for surface_id in (f.surface_id,) + ids:
        if surface_id != surface.id:
            raise SurfaceMismatchError(f"object on {surface_id}, surface is {surface.id}")


def apply_to_weights(surface: Surface, f: MappingClass, weights: Sequence) -> Tuple:
    """Normal coordinates of f(weights) for a flip presentation; integer or real measures."""
    return tuple(act_on_weights(surface.triangulation, f.flips, f.relabel, weights))


def apply_to_path(surface: Surface, f: MappingClass, path: Sequence, budget: int = 0) -> Path:
    """Reduced dart path of f(path); raises PathTooLongError past `budget` darts."""
    tri = surface.triangulation
    if f.is_flip_presented:
        weights = apply_to_weights(surface, f, edge_weights(tri, reduce_cyclic(tri, path)))
        if budget and sum(weights) > budget:
            raise PathTooLongError(sum(weights), budget)
        components = trace_components(tri, weights)
        if len(components) != 1:
            raise NotConnectedError(f"image under {f.name} has {len(components)} components")
        return components[0].path
    result: Path = tuple(path)
    for curve, power in reversed(f.word):
        result = twist_raw(surface, result, curve, power, budget)
    return reduce_cyclic(tri, result)


def apply_to_curve(surface: Surface, f: MappingClass, curve: NormalCurve, budget: int = 0) -> NormalCurve:
    check_on_surface(surface, f, curve.surface_id)
    if f.is_flip_presented:
        weights = apply_to_weights(surface, f, curve.weights)
        if budget and sum(weights) > budget:
            raise PathTooLongError(sum(weights), budget)
        return canonicalize(surface, weights)
    if not f.word:
        return curve
    return curve_from_path(surface, apply_to_path(surface, f, curve.path, budget))


def apply_to_multicurve(surface: Surface, f: MappingClass, multi: MultiCurve) -> MultiCurve:
    return MultiCurve.of(surface.id, [apply_to_curve(surface, f, c) for c in multi])


def apply_to_lamination(surface: Surface, f: MappingClass, lamination: MeasuredLamination) -> MeasuredLamination:
    """Image of every closed and irrational leaf; arc leaves are tied to their frame and refused."""
    check_on_surface(surface, f, lamination.surface_id)
    leaves = []
    for leaf in lamination.components:
        if isinstance(leaf, ClosedLeaf):
            leaves.append(ClosedLeaf(apply_to_curve(surface, f, leaf.curve), leaf.weight))
        elif isinstance(leaf, IrrationalLeaf):
            leaves.append(replace(
                leaf,
                provenance=f"{f.name}({leaf.provenance})",
                cone_basis=tuple(apply_to_curve(surface, f, c) for c in leaf.cone_basis),
                approximant=apply_to_curve(surface, f, leaf.approximant),
                support=None,
            ))
        elif isinstance(leaf, ArcLeaf):
            raise ValueError(f"arc leaf {leaf.arc.label()} has no image outside its frame")
    return MeasuredLamination(surface.id, tuple(leaves))
