"""Core, intermediate and extended unions of a multi-layered limit."""
from typing import Dict, Iterable, List, Sequence, Tuple

from services.mlt_service.app.models.mlt import LaminationSet, Layer, SandwichVerdict
from services.surface_service.app.core.laminations import leaf_in, leaf_intersection
from services.surface_service.app.models.lamination import ArcLeaf, ClosedLeaf, Leaf
from services.surface_service.app.models.surface import Surface


def merge(*groups: Iterable[Leaf]) -> LaminationSet:
    """Components of all groups, first occurrence kept, sorted by key."""
    found: Dict[str, Leaf] = {}
    for group in groups:
        for leaf in group:
            found.setdefault(leaf.key, leaf)
    return tuple(found[key] for key in sorted(found))


def keys(leaves: Iterable[Leaf]) -> Tuple[str, ...]:
    return tuple(sorted({leaf.key for leaf in leaves}))


def _frontier_leaves(layers: Sequence[Layer], arcs: bool) -> List[ClosedLeaf]:
    found = []
    for layer in layers:
        for leaf in layer.components:
            if isinstance(leaf, ClosedLeaf) or isinstance(leaf, ArcLeaf) != arcs:
                continue
            support = layer.support_of(leaf.key)
            if support is not None:
                found.extend(ClosedLeaf(curve) for curve in support.frontier)
    return found


def core_union(layers: Sequence[Layer]) -> LaminationSet:
    if not layers:
        return ()
    later = (leaf for layer in layers[1:] for leaf in layer.components if not isinstance(leaf, ArcLeaf))
    return merge(layers[0].components, later)


def intermediate_union(layers: Sequence[Layer]) -> LaminationSet:
    return merge(core_union(layers), _frontier_leaves(layers, arcs=False))


def extended_union(surface: Surface, layers: Sequence[Layer]) -> LaminationSet:
    """Intermediate union plus arc-support frontier curves missing every layer."""
    everything = [leaf for layer in layers for leaf in layer.components]
    extra = [
        leaf for leaf in _frontier_leaves(layers, arcs=True)
        if all(leaf_intersection(surface, leaf, other) == 0 for other in everything)
    ]
    return merge(intermediate_union(layers), extra)


def sandwich(intermediate: LaminationSet, extended: LaminationSet, target: Sequence[Leaf]) -> SandwichVerdict:
    """intermediate <= target <= extended, component by component."""
    missing = tuple(sorted(leaf.key for leaf in intermediate if not leaf_in(leaf, target)))
    extra = tuple(sorted(leaf.key for leaf in target if not leaf_in(leaf, extended)))
    return SandwichVerdict(lower_ok=not missing, upper_ok=not extra, missing=missing, extra=extra)
