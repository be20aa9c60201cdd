"""End invariants as laminations: validity, the bijection with UML0, adherence and heights."""
from typing import Dict, List, Sequence

from services.shared.bh_utilities.errors import NotUml0Error, OverlapError, SurfaceMismatchError
from services.surface_service.app.core.curves import are_disjoint
from services.surface_service.app.core.laminations import leaf_in, leaf_intersection
from services.surface_service.app.core.subsurfaces import Removed, complement_pieces, minimal_supporting_surface
from services.surface_service.app.models.curve import MultiCurve, NormalCurve
from services.surface_service.app.models.lamination import ArcLeaf, ClosedLeaf, IrrationalLeaf, Leaf
from services.surface_service.app.models.subsurface import Subsurface
from services.surface_service.app.models.surface import Surface
from services.boundary_service.app.models.end_invariant import EndInvariant, Ending

ZERO = 1e-9


def check_disjoint(surface: Surface, leaves: Sequence[Leaf]) -> None:
    for k, first in enumerate(leaves):
        for second in leaves[k + 1:]:
            if first.key == second.key:
                raise OverlapError(f"{first.key} appears twice")
            if leaf_intersection(surface, first, second) > ZERO:
                raise OverlapError(f"{first.key} crosses {second.key}", first=first.key, second=second.key)


def support_of(
    surface: Surface, leaf: IrrationalLeaf, universe: Sequence[NormalCurve] = ()
) -> Subsurface:
    if leaf.support is not None:
        return leaf.support
    return minimal_supporting_surface(surface, leaf, universe)


def _uml0_failures(
    surface: Surface, leaves: Sequence[Leaf], universe: Sequence[NormalCurve]
) -> Dict[str, List[NormalCurve]]:
    closed = {leaf.curve.weights for leaf in leaves if isinstance(leaf, ClosedLeaf)}
    failures: Dict[str, List[NormalCurve]] = {}
    for leaf in leaves:
        if isinstance(leaf, ClosedLeaf):
            continue
        if isinstance(leaf, ArcLeaf):
            failures[leaf.key] = []
            continue
        missing = [c for c in support_of(surface, leaf, universe).frontier if c.weights not in closed]
        if missing:
            failures[leaf.key] = missing
    return failures


def is_uml0(surface: Surface, leaves: Sequence[Leaf], universe: Sequence[NormalCurve] = ()) -> bool:
    """Every frontier curve of every non-closed component's supporting surface is a component."""
    check_disjoint(surface, leaves)
    return not _uml0_failures(surface, leaves, universe)


def validate(surface: Surface, invariant: EndInvariant) -> EndInvariant:
    if invariant.surface_id != surface.id:
        raise SurfaceMismatchError(f"invariant on {invariant.surface_id}, surface is {surface.id}")
    check_disjoint(surface, invariant.components())
    parabolic = {c.weights for c in invariant.parabolics}
    for ending in invariant.endings:
        missing = [c for c in ending.support.frontier if c.weights not in parabolic]
        if missing:
            raise NotUml0Error(
                f"frontier of the support of {ending.key} is not parabolic",
                missing=[list(c.weights) for c in missing],
            )
    return invariant


def e_invariant(surface: Surface, invariant: EndInvariant):
    """The lamination of a boundary point: parabolic curves plus ending laminations."""
    return validate(surface, invariant).components()


def invariant_to_point(
    surface: Surface, leaves: Sequence[Leaf], universe: Sequence[NormalCurve] = (), label: str = ""
) -> EndInvariant:
    check_disjoint(surface, leaves)
    failures = _uml0_failures(surface, leaves, universe)
    if failures:
        raise NotUml0Error(
            "lamination is not in UML0",
            missing={key: [list(c.weights) for c in curves] for key, curves in sorted(failures.items())},
        )
    parabolics = MultiCurve.of(surface.id, [leaf.curve for leaf in leaves if isinstance(leaf, ClosedLeaf)])
    endings = tuple(
        sorted(
            (Ending(leaf, support_of(surface, leaf, universe)) for leaf in leaves if isinstance(leaf, IrrationalLeaf)),
            key=lambda e: e.key,
        )
    )
    return EndInvariant(surface.id, parabolics, endings, label)


def iota(surface: Surface, curves: Sequence[NormalCurve], label: str = "") -> EndInvariant:
    """The regular point whose parabolic curves are exactly the multicurve."""
    for curve in curves:
        if curve.surface_id != surface.id:
            raise SurfaceMismatchError(f"curve on {curve.surface_id}, surface is {surface.id}")
    if not are_disjoint(surface, curves):
        raise OverlapError("curves do not form a multicurve")
    return EndInvariant(surface.id, MultiCurve.of(surface.id, curves), (), label)


def unilaterally_adherent(b: EndInvariant, a: EndInvariant, tolerance: float = ZERO) -> bool:
    """b adheres to a: every component of e(a) is a component of e(b)."""
    if a.surface_id != b.surface_id:
        raise SurfaceMismatchError(f"invariants on {b.surface_id} and {a.surface_id}")
    mine = b.components()
    return all(leaf_in(leaf, mine, tolerance) for leaf in a.components())


def qc_dim(surface: Surface, invariant: EndInvariant) -> int:
    """Real dimension of the quasi-conformal deformation space of the point.

    Pieces left after cutting along the parabolics and deleting ending supports
    contribute their Teichmuller dimension; pants contribute 0.
    """
    removed: List[Removed] = [e.support for e in invariant.endings]
    if invariant.parabolics.components:
        removed.append(invariant.parabolics)
    if not removed:
        return surface.type.teich_dim
    return sum(2 * piece.type.complexity for piece in complement_pieces(surface, removed))


def formula_height(surface: Surface, invariant: EndInvariant) -> int:
    return qc_dim(surface, invariant) // 2


def max_height(surface: Surface) -> int:
    """Largest adherence height of a boundary point, reached by single curves."""
    return surface.type.teich_dim // 2 - 1
