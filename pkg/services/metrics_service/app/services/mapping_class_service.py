from typing import Optional, Sequence, Tuple

import numpy as np

from services.metrics_service.app.core import penner, pl_action
from services.metrics_service.app.core.action import (
    apply_to_curve,
    apply_to_lamination,
    apply_to_multicurve,
)
from services.metrics_service.app.core.presentation import as_flips
from services.metrics_service.app.dto.metrics import MappingClassRecord, TwistLetter
from services.metrics_service.app.models.mapping_class import MappingClass
from services.shared.bh_utilities.errors import FlipSequenceError, ReducibleOrPeriodicError, SurfaceMismatchError
from services.shared.bh_utilities.settings import StableSettings
from services.surface_service.app.core.curves import basic_curves, canonicalize, intersection
from services.surface_service.app.core.cutting import cut_along, locate_curve
from services.surface_service.app.core.flips import check_presentation
from services.surface_service.app.core.subsurfaces import greedy_disjoint
from services.surface_service.app.models.curve import MultiCurve, NormalCurve
from services.surface_service.app.models.lamination import IrrationalLeaf, MeasuredLamination
from services.surface_service.app.models.subsurface import Subsurface
from services.surface_service.app.models.surface import Surface


def mapping_class_record(f: MappingClass) -> MappingClassRecord:
    support = [list(c.weights) for c in f.support] or None
    if f.is_flip_presented:
        return MappingClassRecord(
            surface_id=f.surface_id, name=f.name, flips=list(f.flips), relabel=list(f.relabel), support=support
        )
    return MappingClassRecord(
        surface_id=f.surface_id,
        name=f.name,
        word=[TwistLetter(curve=list(c.weights), power=p) for c, p in f.word],
        support=support,
    )


def mapping_class_from_record(surface: Surface, record: MappingClassRecord) -> MappingClass:
    if record.surface_id != surface.id:
        raise SurfaceMismatchError(f"mapping class on {record.surface_id}, surface is {surface.id}")
    support = tuple(canonicalize(surface, weights) for weights in record.support or [])
    if record.flips or record.relabel:
        if record.word:
            raise FlipSequenceError(f"{record.name} gives both flips and a twist word")
        check_presentation(surface.triangulation, record.flips, record.relabel)
        return MappingClass.from_flips(surface.id, record.flips, record.relabel, record.name, support)
    word = tuple((canonicalize(surface, letter.curve), letter.power) for letter in record.word)
    return MappingClass(surface.id, word, record.name, support=support)


def penner_support(surface: Surface, basis: Sequence[NormalCurve], universe: Sequence[NormalCurve]) -> Subsurface:
    """Subsurface filled by the basis curves, bounded by universe curves that miss all of them."""
    outside = [
        c for c in universe
        if all(c.weights != b.weights and intersection(surface, c, b) == 0 for b in basis)
    ]
    cut = cut_along(surface, greedy_disjoint(surface, outside))
    piece = locate_curve(surface, cut, basis[0])
    return Subsurface.from_piece(cut, piece)


class MappingClassService:
    """Mapping classes acting on curves and laminations, and their invariant laminations."""

    def __init__(self, logger, settings: StableSettings):
        self.logger = logger
        self.settings = settings

    def word(self, surface: Surface, letters: Sequence[Tuple[NormalCurve, int]], name: str = "f") -> MappingClass:
        for curve, _ in letters:
            if curve.surface_id != surface.id:
                raise SurfaceMismatchError(f"twist curve on {curve.surface_id}, surface is {surface.id}")
        return MappingClass(surface.id, tuple(letters), name)

    def apply_to_curve(self, surface: Surface, f: MappingClass, curve: NormalCurve, budget: int = 0) -> NormalCurve:
        try:
            return apply_to_curve(surface, f, curve, budget)
        except Exception as e:
            self.logger.error(f"Applying {f.name} to {curve.key()} failed: {str(e)}")
            raise

    def apply_to_multicurve(self, surface: Surface, f: MappingClass, multi: MultiCurve) -> MultiCurve:
        return apply_to_multicurve(surface, f, multi)

    def apply_to_lamination(self, surface: Surface, f: MappingClass, lamination: MeasuredLamination) -> MeasuredLamination:
        return apply_to_lamination(surface, f, lamination)

    def flips(self, surface: Surface, f: MappingClass) -> MappingClass:
        """f as a flip presentation; twist words are compiled to flips."""
        try:
            return as_flips(surface, f)
        except Exception as e:
            self.logger.error(f"Flip presentation of {f.name} failed: {str(e)}")
            raise

    def _support(
        self, surface: Surface, f: MappingClass, inside: NormalCurve, universe: Optional[Sequence[NormalCurve]]
    ) -> Optional[Subsurface]:
        if f.support:
            cut = cut_along(surface, f.support)
            return Subsurface.from_piece(cut, locate_curve(surface, cut, inside))
        if universe is not None and f.word:
            return penner_support(surface, f.curves(), universe)
        return None

    def _penner_leaf(self, surface: Surface, f: MappingClass, provenance: str, universe) -> Tuple[IrrationalLeaf, int]:
        matrix, basis = penner.transition_matrix(surface, f)
        power = penner.primitive_power(matrix, self.settings.power_bound)
        if not power:
            raise ReducibleOrPeriodicError(
                f"no power of the transition matrix of {f.name} up to {self.settings.power_bound} is positive"
            )
        dilatation, vector = penner.perron_frobenius(matrix, self.settings)
        if dilatation <= 1.0 + self.settings.invariance_tolerance:
            raise ReducibleOrPeriodicError(f"{f.name} has dilatation {dilatation:.12f}")
        residual = penner.invariance_residual(matrix, vector)
        if residual > self.settings.invariance_tolerance:
            raise ReducibleOrPeriodicError(f"eigenvector of {f.name} is not invariant: {residual:.3e}")
        seed = penner.seed_curve(surface, f, basis)
        curve, exponent = penner.approximant(surface, f, seed, self.settings.approximant_budget)
        leaf = IrrationalLeaf(
            surface_id=surface.id,
            provenance=provenance,
            dilatation=dilatation,
            cone_basis=basis,
            cone_coordinates=tuple(float(x) for x in vector),
            approximant=curve,
            scale=float(curve.total_weight),
            support=self._support(surface, f, basis[0], universe),
        )
        return leaf, exponent

    def _flip_leaf(self, surface: Surface, f: MappingClass, provenance: str, universe) -> Tuple[IrrationalLeaf, int]:
        presented = as_flips(surface, f)
        basics = basic_curves(surface)
        seed = np.sum([np.asarray(c.weights, dtype=float) for c in basics], axis=0)
        dilatation, vector, steps = pl_action.attracting_lamination(surface, presented, seed, self.settings)
        if dilatation <= 1.0 + self.settings.invariance_tolerance:
            raise ReducibleOrPeriodicError(f"{f.name} has dilatation {dilatation:.12f}")
        start = penner.seed_curve(surface, presented, basics)
        curve, exponent = penner.approximant(surface, presented, start, self.settings.approximant_budget)
        self.logger.debug(f"Lamination of {f.name} settled after {steps} iterations")
        leaf = IrrationalLeaf(
            surface_id=surface.id,
            provenance=provenance,
            dilatation=dilatation,
            cone_basis=(),
            cone_coordinates=tuple(float(x) for x in vector),
            approximant=curve,
            scale=float(curve.total_weight),
            support=self._support(surface, f, curve, universe),
        )
        return leaf, exponent

    def stable_lamination(
        self,
        surface: Surface,
        f: MappingClass,
        universe: Optional[Sequence[NormalCurve]] = None,
        provenance: Optional[str] = None,
    ) -> IrrationalLeaf:
        """Attracting lamination of f: the projective limit of f^n(c).

        Penner words use their nonnegative transition matrix on the twist
        curves; every other class uses the piecewise linear action of its
        flip presentation on normal coordinates.
        """
        provenance = provenance or f"stable({f.name})"
        try:
            if f.is_identity:
                raise ReducibleOrPeriodicError("the identity has no invariant lamination")
            if penner.is_penner_form(surface, f):
                leaf, exponent = self._penner_leaf(surface, f, provenance, universe)
            else:
                leaf, exponent = self._flip_leaf(surface, f, provenance, universe)
            self.logger.info(
                f"Invariant lamination {provenance} on {surface.id}: dilatation {leaf.dilatation:.9f}, "
                f"approximant f^{exponent} with {len(leaf.approximant.path)} darts"
            )
            return leaf
        except Exception as e:
            self.logger.error(f"Invariant lamination of {f.name} failed: {str(e)}")
            raise

    def unstable_lamination(
        self, surface: Surface, f: MappingClass, universe: Optional[Sequence[NormalCurve]] = None
    ) -> IrrationalLeaf:
        return self.stable_lamination(surface, f.inverse(), universe, provenance=f"unstable({f.name})")

    def invariance_residual(self, surface: Surface, f: MappingClass, leaf: IrrationalLeaf) -> float:
        if leaf.cone_basis:
            matrix, _ = penner.transition_matrix(surface, f)
            return penner.invariance_residual(matrix, np.asarray(leaf.cone_coordinates))
        return pl_action.invariance_residual(surface, as_flips(surface, f), leaf.cone_coordinates)
