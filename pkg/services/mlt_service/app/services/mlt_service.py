from dataclasses import replace
from typing import Callable, List, Optional, Sequence, Tuple

from services.limits_service.app.core.candidates import curves_in_piece
from services.limits_service.app.models.sequence import ProjectiveLimitReport, Subsequence, TeichSequence, Verdict
from services.limits_service.app.services.limit_service import LimitService
from services.mlt_service.app.core import unions
from services.mlt_service.app.core.layering import growth_order, removals
from services.mlt_service.app.dto.mlt import LayerRecord, MltResultRecord, SandwichRecord, SupportRecord
from services.mlt_service.app.models.mlt import Layer, MltResult, PieceLimit, SandwichVerdict
from services.boundary_service.app.models.end_invariant import EndInvariant
from services.shared.bh_utilities.errors import InconclusiveLayerError, SurfaceMismatchError
from services.shared.bh_utilities.parallel import ordered_map
from services.shared.bh_utilities.settings import LimitsSettings
from services.surface_service.app.core.cutting import cut_along
from services.surface_service.app.core.subsurfaces import Removed, complement_subsurfaces
from services.surface_service.app.dto.surface import LeafRecord
from services.surface_service.app.models.curve import MultiCurve, NormalCurve
from services.surface_service.app.models.lamination import IrrationalLeaf, projectively_equal
from services.surface_service.app.models.subsurface import Subsurface
from services.surface_service.app.models.surface import Surface
from services.surface_service.app.services.subsurface_service import leaf_record, piece_record


def whole(surface: Surface) -> Subsurface:
    cut = cut_along(surface, [])
    return Subsurface.from_piece(cut, cut.pieces[0])


class MltService:
    """Multi-layered Thurston limits: a limit on the whole surface, then on what it leaves unused."""

    def __init__(self, logger, settings: LimitsSettings, limit_service: LimitService):
        self.logger = logger
        self.settings = settings
        self.limit_service = limit_service

    def _piece_limit(
        self,
        surface: Surface,
        seq: TeichSequence,
        piece: Optional[Subsurface],
        universe: Sequence[NormalCurve],
        laminations,
        candidate_budget: Optional[int],
    ):
        limits = self.limit_service
        if piece is not None:
            seq = limits.restrict_sequence(surface, seq, piece, universe)
        inside = curves_in_piece(surface, universe, piece)
        order = growth_order(surface, seq, inside, self.settings.dart_budget)
        candidates = limits.candidate_curves(surface, universe, piece, candidate_budget, order)
        return limits.thurston_limit(surface, seq, candidates, laminations)

    def common_subsequence(
        self, depth: int, converging: Sequence[PieceLimit], rerun: Callable[[int, Subsequence], ProjectiveLimitReport]
    ) -> Tuple[Subsequence, List[PieceLimit]]:
        """A subsequence along which every piece of a layer converges.

        Pieces are met in order; one whose own subsequence shares no index with
        the running one is redone along it through `rerun`.
        """
        common = converging[0].report.subsequence
        settled = [converging[0]]
        for k, found in enumerate(converging[1:], start=1):
            own = found.report.subsequence
            merged = common.meet(own)
            if merged is None:
                label = found.piece.type.label
                self.logger.warning(f"Layer {depth} on {label} converges along {own.label()}, disjoint from {common.label()}")
                report = rerun(k, common)
                if report.verdict != Verdict.CONVERGES:
                    raise InconclusiveLayerError(
                        f"layer {depth} on {label} does not converge along {common.label()}: {report.note}",
                        layer=depth,
                        piece=label,
                        residual=report.residual,
                    )
                found = PieceLimit(found.piece, report)
                merged = common.meet(report.subsequence)
            common = merged
            settled.append(found)
        return common, settled

    def multi_layered_limit(
        self,
        surface: Surface,
        seq: TeichSequence,
        universe: Sequence[NormalCurve],
        candidate_budget: Optional[int] = None,
    ) -> MltResult:
        """Take limits layer by layer until every remaining piece is bounded."""
        if seq.surface_id != surface.id:
            raise SurfaceMismatchError(f"sequence on {seq.surface_id}, surface is {surface.id}")
        self.logger.info(f"Multi-layered limit of {seq.name} on {surface.id}")
        laminations = self.limit_service.factor_laminations(surface, seq, universe)
        removed: List[Removed] = []
        bounded: List[Subsurface] = []
        layers: List[Layer] = []
        active: List[Optional[Subsurface]] = [None]
        current = seq
        depth = 0
        while active:
            depth += 1
            if depth > surface.type.xi:
                raise InconclusiveLayerError(
                    f"more than {surface.type.xi} layers on {surface.id}", layer=depth
                )
            reports = ordered_map(
                lambda piece: self._piece_limit(surface, current, piece, universe, laminations, candidate_budget),
                active,
            )
            converging, sources = [], []
            for piece, report in zip(active, reports):
                where = piece if piece is not None else whole(surface)
                if report.verdict == Verdict.INCONCLUSIVE:
                    self.logger.error(f"Layer {depth} on {where.type.label} is inconclusive: {report.note}")
                    raise InconclusiveLayerError(
                        f"layer {depth} on {where.type.label} is inconclusive: {report.note}",
                        layer=depth,
                        piece=where.type.label,
                        residual=report.residual,
                    )
                if report.verdict == Verdict.BOUNDED:
                    bounded.append(where)
                else:
                    converging.append(PieceLimit(where, report))
                    sources.append(piece)
            if not converging:
                break

            def rerun(k: int, along: Subsequence):
                restricted = replace(current, modulus=along.modulus, residue=along.residue)
                return self._piece_limit(surface, restricted, sources[k], universe, laminations, candidate_budget)

            subsequence, converging = self.common_subsequence(depth, converging, rerun)

            placed = [(leaf, p.piece) for p in converging for leaf in p.report.limit.components]
            supports, cut = removals(surface, placed, universe)
            layers.append(
                Layer(
                    depth=depth,
                    pieces=tuple(converging),
                    components=unions.merge(leaf for leaf, _ in placed),
                    supports=tuple(supports),
                    subsequence=subsequence,
                    cut=tuple(c.key() for c in cut),
                )
            )
            self.logger.info(
                f"Layer {depth}: {list(unions.keys(leaf for leaf, _ in placed))} along {subsequence.label()}"
            )
            removed.extend(sub for _, sub in supports)
            if cut:
                removed.append(MultiCurve.of(surface.id, cut))
            current = replace(current, modulus=subsequence.modulus, residue=subsequence.residue)
            active = complement_subsurfaces(surface, removed + bounded)

        result = MltResult(
            surface_id=surface.id,
            layers=tuple(layers),
            bounded=tuple(bounded),
            core=unions.core_union(layers),
            intermediate=unions.intermediate_union(layers),
            extended=unions.extended_union(surface, layers),
        )
        self.logger.info(
            f"Multi-layered limit of {seq.name}: {len(layers)} layers, "
            f"extended adds {sorted(set(unions.keys(result.extended)) - set(unions.keys(result.intermediate)))}"
        )
        return result

    def core_union(self, result: MltResult):
        return unions.core_union(result.layers)

    def intermediate_union(self, result: MltResult):
        return unions.intermediate_union(result.layers)

    def extended_union(self, surface: Surface, result: MltResult):
        return unions.extended_union(surface, result.layers)

    def sandwich_check(self, surface: Surface, result: MltResult, target: EndInvariant) -> SandwichVerdict:
        """Whether e(target) contains the intermediate union and lies in the extended union."""
        for surface_id in (result.surface_id, target.surface_id):
            if surface_id != surface.id:
                raise SurfaceMismatchError(f"object on {surface_id}, surface is {surface.id}")
        verdict = unions.sandwich(result.intermediate, result.extended, target.components())
        self.logger.info(
            f"Sandwich for {target.name()}: lower {verdict.lower_ok}, upper {verdict.upper_ok}"
        )
        return verdict

    def sandwich_from_record(self, surface: Surface, record: MltResultRecord, target: EndInvariant) -> SandwichVerdict:
        """The sandwich check against a stored result; irrational components also compare cone coordinates."""
        for surface_id in (record.surface_id, target.surface_id):
            if surface_id != surface.id:
                raise SurfaceMismatchError(f"object on {surface_id}, surface is {surface.id}")
        mine = {leaf.key: leaf for leaf in target.components()}

        def matches(stored: LeafRecord) -> bool:
            leaf = mine.get(stored.key)
            if leaf is None:
                return False
            if isinstance(leaf, IrrationalLeaf) and stored.cone_coordinates is not None:
                return projectively_equal(leaf.cone_coordinates, stored.cone_coordinates)
            return True

        extended = {stored.key for stored in record.extended}
        verdict = SandwichVerdict(
            lower_ok=all(matches(stored) for stored in record.intermediate),
            upper_ok=all(key in extended for key in mine),
            missing=tuple(sorted(stored.key for stored in record.intermediate if not matches(stored))),
            extra=tuple(sorted(key for key in mine if key not in extended)),
        )
        self.logger.info(f"Sandwich for {target.name()} against a stored result: passed {verdict.passed}")
        return verdict

    def result_record(self, surface: Surface, result: MltResult) -> MltResultRecord:
        layers = [
            LayerRecord(
                depth=layer.depth,
                subsequence=layer.subsequence.label(),
                components=[leaf_record(leaf) for leaf in layer.components],
                supports=[SupportRecord(key=key, support=piece_record(sub)) for key, sub in layer.supports],
                cut=list(layer.cut),
                pieces=[self.limit_service.report_record(surface, p.report) for p in layer.pieces],
            )
            for layer in result.layers
        ]
        return MltResultRecord(
            surface_id=result.surface_id,
            layers=layers,
            surfaces=[piece_record(sub) for sub in result.bounded],
            subsequences=[layer.subsequence.label() for layer in result.layers],
            core=[leaf_record(leaf) for leaf in result.core],
            intermediate=[leaf_record(leaf) for leaf in result.intermediate],
            extended=[leaf_record(leaf) for leaf in result.extended],
        )

    def sandwich_record(self, surface: Surface, target: EndInvariant, verdict: SandwichVerdict) -> SandwichRecord:
        return SandwichRecord(
            surface_id=surface.id,
            target=list(target.keys()),
            lower_ok=verdict.lower_ok,
            upper_ok=verdict.upper_ok,
            missing=list(verdict.missing),
            extra=list(verdict.extra),
            label=target.label or None,
        )

    def result_differences(self, first: MltResultRecord, second: MltResultRecord) -> List[str]:
        """Every way two stored results disagree, empty when they are the same limit.

        Weights agree within twice the tolerance, cone coordinates projectively,
        and every piece of either result must have converged within the tolerance.
        """
        tolerance = self.settings.tolerance
        found: List[str] = []

        def dumped(records) -> List[str]:
            return sorted(record.model_dump_json() for record in records)

        def leaves(where: str, mine: List[LeafRecord], theirs: List[LeafRecord]):
            keys = ([leaf.key for leaf in mine], [leaf.key for leaf in theirs])
            if keys[0] != keys[1]:
                found.append(f"{where}: {keys[0]} != {keys[1]}")
                return
            for a, b in zip(mine, theirs):
                if a.kind != b.kind:
                    found.append(f"{where} {a.key}: kind {a.kind} != {b.kind}")
                if abs(a.weight - b.weight) > 2 * tolerance:
                    found.append(f"{where} {a.key}: weight {a.weight:.6f} != {b.weight:.6f}")
                cones = (a.cone_coordinates, b.cone_coordinates)
                if (cones[0] is None) != (cones[1] is None) or (
                    cones[0] is not None and not projectively_equal(cones[0], cones[1], tolerance)
                ):
                    found.append(f"{where} {a.key}: cone coordinates differ")
                if dumped([a.support] if a.support else []) != dumped([b.support] if b.support else []):
                    found.append(f"{where} {a.key}: supports differ")

        if first.surface_id != second.surface_id:
            found.append(f"surface {first.surface_id} != {second.surface_id}")
        if first.subsequences != second.subsequences:
            found.append(f"subsequences {first.subsequences} != {second.subsequences}")
        if len(first.layers) != len(second.layers):
            found.append(f"{len(first.layers)} layers != {len(second.layers)}")
        for mine, theirs in zip(first.layers, second.layers):
            where = f"layer {mine.depth}"
            leaves(where, mine.components, theirs.components)
            if mine.subsequence != theirs.subsequence:
                found.append(f"{where}: along {mine.subsequence!r} != {theirs.subsequence!r}")
            if dumped(mine.supports) != dumped(theirs.supports):
                found.append(f"{where}: supports differ")
            if sorted(mine.cut) != sorted(theirs.cut):
                found.append(f"{where}: cut {mine.cut} != {theirs.cut}")
            if sorted(p.subsequence for p in mine.pieces) != sorted(p.subsequence for p in theirs.pieces):
                found.append(f"{where}: piece subsequences differ")
        for name, record in (("first", first), ("second", second)):
            for layer in record.layers:
                for piece in layer.pieces:
                    if piece.residual > tolerance:
                        found.append(f"{name} layer {layer.depth}: residual {piece.residual:.3e} > {tolerance:.3e}")
        if dumped(first.surfaces) != dumped(second.surfaces):
            found.append("bounded surfaces differ")
        for where, mine, theirs in (
            ("core", first.core, second.core),
            ("intermediate", first.intermediate, second.intermediate),
            ("extended", first.extended, second.extended),
        ):
            leaves(where, mine, theirs)
        if found:
            self.logger.info(f"Results on {first.surface_id} differ in {len(found)} places")
        return found
