from typing import Dict, List, Optional, Sequence, Tuple

from services.boundary_service.app.core import approximation, certificates, invariants, simplex
from services.boundary_service.app.core.poset import AdherencePoset, invariant_universe
from services.boundary_service.app.dto.boundary import (
    ApproximationRecord,
    CertificateRecord,
    EndingRecord,
    EndInvariantRecord,
    HeightRecord,
    SimplexRecord,
    TowerRecord,
    TowersRecord,
)
from services.boundary_service.app.models.boundary import (
    AdherenceTower,
    ApproximatingSequence,
    HeightReport,
    MismatchCertificate,
    SimplexReport,
)
from services.boundary_service.app.models.end_invariant import EndInvariant, Ending
from services.metrics_service.app.core import penner
from services.metrics_service.app.models.mapping_class import MappingClass
from services.metrics_service.app.services.mapping_class_service import mapping_class_from_record
from services.shared.bh_utilities.errors import (
    EnumerationBudgetExceededError,
    GeneratorMismatchError,
    SurfaceMismatchError,
)
from services.shared.bh_utilities.parallel import ordered_map
from services.shared.bh_utilities.settings import BoundarySettings, EnumerationSettings
from services.surface_service.app.core.curves import are_disjoint, canonicalize
from services.surface_service.app.models.curve import MultiCurve, NormalCurve
from services.surface_service.app.models.lamination import IrrationalLeaf, Leaf
from services.surface_service.app.models.surface import Surface

BRUTE_FORCE_MAX_XI = 6


class BoundaryService:
    """Points of the reduced Bers boundary as end invariants, ordered by unilateral adherence."""

    def __init__(
        self,
        logger,
        settings: BoundarySettings,
        enumeration_settings: EnumerationSettings,
        mapping_class_service,
        enumeration_service,
    ):
        self.logger = logger
        self.settings = settings
        self.enumeration_settings = enumeration_settings
        self.mapping_class_service = mapping_class_service
        self.enumeration_service = enumeration_service
        self._posets: Dict[tuple, AdherencePoset] = {}

    # Records ---------------------------------------------------------------

    def generators_from_record(self, surface: Surface, record: EndInvariantRecord) -> Dict[str, MappingClass]:
        """Generator of every ending, keyed by the key of its attracting lamination."""
        generators = {}
        for ending in record.endings:
            if ending.generator is None:
                raise GeneratorMismatchError("every ending needs a generating mapping class", provenance=ending.provenance)
            g = mapping_class_from_record(surface, ending.generator)
            generators[f"lamination:stable({g.name})"] = g
        return generators

    def _ending(self, surface: Surface, record: EndingRecord) -> Ending:
        if record.generator is None:
            raise GeneratorMismatchError("every ending needs a generating mapping class", provenance=record.provenance)
        g = mapping_class_from_record(surface, record.generator)
        frontier = [canonicalize(surface, w) for w in record.support_frontier]
        universe = frontier or self.enumeration_service.universe(surface).curves
        leaf = self.mapping_class_service.stable_lamination(surface, g, universe)
        if record.provenance is not None and record.provenance != leaf.provenance:
            raise GeneratorMismatchError(
                f"{g.name} generates {leaf.provenance}, not {record.provenance}", provenance=record.provenance
            )
        found = sorted(c.weights for c in leaf.support.frontier)
        if frontier and found != sorted(c.weights for c in frontier):
            raise GeneratorMismatchError(
                f"support of {leaf.provenance} is bounded by {found}",
                expected=sorted(list(c.weights) for c in frontier),
            )
        return Ending(leaf, leaf.support)

    def invariant_from_record(self, surface: Surface, record: EndInvariantRecord) -> EndInvariant:
        if record.surface_id != surface.id:
            raise SurfaceMismatchError(f"invariant on {record.surface_id}, surface is {surface.id}")
        parabolics = MultiCurve.of(surface.id, [canonicalize(surface, w) for w in record.parabolics])
        endings = tuple(sorted((self._ending(surface, e) for e in record.endings), key=lambda e: e.key))
        invariant = EndInvariant(surface.id, parabolics, endings, record.label or "")
        return invariants.validate(surface, invariant)

    def invariant_record(self, invariant: EndInvariant) -> EndInvariantRecord:
        return EndInvariantRecord(
            surface_id=invariant.surface_id,
            parabolics=[list(c.weights) for c in invariant.parabolics],
            endings=[
                EndingRecord(
                    provenance=e.lamination.provenance,
                    support_frontier=[list(c.weights) for c in e.support.frontier],
                    weights=list(e.lamination.edge_weights()),
                )
                for e in invariant.endings
            ],
            label=invariant.label or None,
        )

    # Points and adherence --------------------------------------------------

    def is_uml0(self, surface: Surface, leaves: Sequence[Leaf]) -> bool:
        return invariants.is_uml0(surface, leaves, self.enumeration_service.universe(surface).curves)

    def e_invariant(self, surface: Surface, invariant: EndInvariant) -> Tuple[Leaf, ...]:
        return invariants.e_invariant(surface, invariant)

    def invariant_to_point(self, surface: Surface, leaves: Sequence[Leaf], label: str = "") -> EndInvariant:
        return invariants.invariant_to_point(
            surface, leaves, self.enumeration_service.universe(surface).curves, label
        )

    def iota(self, surface: Surface, curves: Sequence[NormalCurve]) -> EndInvariant:
        return invariants.iota(surface, curves)

    def unilaterally_adherent(self, b: EndInvariant, a: EndInvariant) -> bool:
        return invariants.unilaterally_adherent(b, a)

    def qc_dim(self, surface: Surface, invariant: EndInvariant) -> int:
        return invariants.qc_dim(surface, invariants.validate(surface, invariant))

    # Towers ----------------------------------------------------------------

    def poset(
        self, surface: Surface, endings: Sequence[Ending] = (), max_weight: Optional[int] = None
    ) -> AdherencePoset:
        """Adherence order on every invariant the curve universe and the given endings allow."""
        key = (surface.id, tuple(sorted(e.key for e in endings)), max_weight)
        if key not in self._posets:
            if surface.type.xi > BRUTE_FORCE_MAX_XI:
                raise EnumerationBudgetExceededError(
                    f"tower search needs xi <= {BRUTE_FORCE_MAX_XI}, {surface.id} has {surface.type.xi}",
                    xi=surface.type.xi,
                )
            if max_weight is None:
                universe = self.enumeration_service.universe(surface)
            else:
                universe = self.enumeration_service.universe(surface, weight_cap=max_weight)
            found = invariant_universe(surface, universe, endings, self.enumeration_settings.max_invariants)
            self._posets[key] = AdherencePoset(found)
            self.logger.info(
                f"Adherence poset on {surface.id}: {len(found)} invariants from {len(universe.curves)} curves"
            )
        return self._posets[key]

    def _start(self, surface: Surface, poset: AdherencePoset, invariant: EndInvariant) -> int:
        start = poset.index(invariant)
        if start is None:
            raise EnumerationBudgetExceededError(
                f"{invariant.name()} lies outside the enumerated universe of {surface.id}"
            )
        return start

    def adherence_height(self, surface: Surface, invariant: EndInvariant, mode: str = "formula") -> HeightReport:
        """Adherence height from the quasi-conformal dimension, checked by tower search in brute_force mode."""
        try:
            invariants.validate(surface, invariant)
            dim = invariants.qc_dim(surface, invariant)
            report = HeightReport(invariant=invariant, qc_dim=dim, formula=dim // 2)
            if mode == "brute_force":
                poset = self.poset(surface, invariant.endings)
                start = self._start(surface, poset, invariant)
                report = HeightReport(
                    invariant=invariant,
                    qc_dim=dim,
                    formula=dim // 2,
                    brute_force=int(poset.heights[start]),
                    universe_size=len(poset),
                )
                if not report.agrees:
                    self.logger.warning(
                        f"Height of {invariant.name()}: formula {report.formula}, towers {report.brute_force}"
                    )
            elif mode != "formula":
                raise ValueError(f"unknown height mode {mode!r}")
            self.logger.info(f"Adherence height of {invariant.name()} on {surface.id}: {report.formula}")
            return report
        except Exception as e:
            self.logger.error(f"Adherence height of {invariant.name()} failed: {str(e)}")
            raise

    def compare_heights(self, surface: Surface, points: Sequence[EndInvariant]) -> List[HeightReport]:
        """Formula and tower-search heights of many points, the regular poset built once up front."""
        self.poset(surface)
        return ordered_map(lambda p: self.adherence_height(surface, p, "brute_force"), points)

    def towers(self, surface: Surface, invariant: EndInvariant, limit: int = 10) -> List[AdherenceTower]:
        poset = self.poset(surface, invariant.endings)
        self._start(surface, poset, invariant)
        return [AdherenceTower(chain) for chain in poset.towers(invariant, limit)]

    def simplex_check(self, surface: Surface, curves: Sequence[NormalCurve]) -> SimplexReport:
        """Whether the curves span a simplex, decided by towers and by disjointness."""
        poset = self.poset(surface)
        endpoint = simplex.simplex_endpoint(surface, curves, poset)
        report = SimplexReport(
            curves=tuple(curves),
            via_towers=endpoint is not None,
            disjoint=are_disjoint(surface, curves),
            endpoint=endpoint,
        )
        if not report.agrees:
            self.logger.warning(f"Simplex test disagrees on {[c.key() for c in curves]}")
        return report

    # Approximation and certificates ----------------------------------------

    def _check_generator(self, surface: Surface, ending: Ending, g: MappingClass) -> IrrationalLeaf:
        leaf = self.mapping_class_service.stable_lamination(surface, g)
        if not leaf.same_as(ending.lamination, invariants.ZERO):
            raise GeneratorMismatchError(
                f"the attracting lamination of {g.name} is not {ending.key}", generator=g.name
            )
        return leaf

    def approximating_sequence(
        self,
        surface: Surface,
        target: EndInvariant,
        generators: Dict[str, MappingClass],
        steps: Optional[int] = None,
    ) -> ApproximatingSequence:
        """Regular points a_i, one approximant g^i(seed) per ending, converging to the target."""
        steps = steps or self.settings.approximation_steps
        tolerance = self.settings.approximation_tolerance
        invariants.validate(surface, target)
        if target.is_regular:
            return ApproximatingSequence(target, tuple(target for _ in range(steps)), tolerance=tolerance)

        per_ending = []
        for ending in target.endings:
            g = generators.get(ending.key)
            if g is None:
                raise GeneratorMismatchError(f"no generator given for {ending.key}", ending=ending.key)
            leaf = self._check_generator(surface, ending, g)
            seed = penner.seed_curve(surface, g, leaf.cone_basis)
            per_ending.append(approximation.iterates(surface, g, seed, steps))

        points = approximation.regular_points(surface, target, per_ending)
        distances = tuple(
            tuple(approximation.projective_distance(curves[i], e.lamination) for curves, e in zip(per_ending, target.endings))
            for i in range(steps)
        )
        universe = self.enumeration_service.universe(surface).curves
        transverse = all(
            approximation.transverse_ok(surface, target, point, [curves[i] for curves in per_ending], universe)
            for i, point in enumerate(points)
        )
        result = ApproximatingSequence(target, tuple(points), distances, transverse, tolerance)
        self.logger.info(
            f"Approximating {target.name()} in {steps} steps: last distance {max(distances[-1]):.3e}, "
            f"converged {result.converged}"
        )
        return result

    def topology_mismatch_certificates(
        self, surface: Surface, c: NormalCurve, d: NormalCurve, terms: Optional[int] = None
    ) -> MismatchCertificate:
        certificate = certificates.topology_mismatch(surface, c, d, terms or self.settings.approximation_steps)
        self.logger.info(f"Topology mismatch certificate on {surface.id}: passed {certificate.passed}")
        return certificate

    # Output records --------------------------------------------------------

    def height_record(self, surface: Surface, report: HeightReport) -> HeightRecord:
        return HeightRecord(
            surface_id=surface.id,
            invariant=self.invariant_record(report.invariant),
            qc_dim=report.qc_dim,
            formula=report.formula,
            brute_force=report.brute_force,
            agrees=report.agrees,
            universe_size=report.universe_size,
        )

    def towers_record(self, surface: Surface, start: EndInvariant, towers: Sequence[AdherenceTower]) -> TowersRecord:
        return TowersRecord(
            surface_id=surface.id,
            start=self.invariant_record(start),
            height=max((t.length for t in towers), default=0),
            towers=[
                TowerRecord(length=t.length, invariants=[self.invariant_record(a) for a in t.invariants])
                for t in towers
            ],
        )

    def simplex_record(self, surface: Surface, report: SimplexReport) -> SimplexRecord:
        return SimplexRecord(
            surface_id=surface.id,
            curves=[list(c.weights) for c in report.curves],
            via_towers=report.via_towers,
            disjoint=report.disjoint,
            agrees=report.agrees,
            endpoint=self.invariant_record(report.endpoint) if report.endpoint is not None else None,
        )

    def approximation_record(self, surface: Surface, result: ApproximatingSequence) -> ApproximationRecord:
        return ApproximationRecord(
            surface_id=surface.id,
            target=self.invariant_record(result.target),
            points=[self.invariant_record(p) for p in result.points],
            distances=[list(row) for row in result.distances],
            converged=result.converged,
            transverse_ok=result.transverse_ok,
            tolerance=result.tolerance,
        )

    def certificate_record(self, certificate: MismatchCertificate) -> CertificateRecord:
        return CertificateRecord(
            surface_id=certificate.surface_id,
            c=list(certificate.c.weights),
            d=list(certificate.d.weights),
            terms=certificate.terms,
            weights=[list(w) for w in certificate.weights],
            distances=list(certificate.distances),
            heights=list(certificate.heights),
            checks=dict(sorted(certificate.checks.items())),
            passed=certificate.passed,
        )
