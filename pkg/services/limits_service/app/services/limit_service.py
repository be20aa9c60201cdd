from dataclasses import replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from services.limits_service.app.core import detection
from services.limits_service.app.core.candidates import CandidateSet, candidate_set, curves_in_piece, frontier_arcs
from services.limits_service.app.core.lengths import as_array, length_table
from services.limits_service.app.dto.limits import LimitReportRecord, SequenceSpec, VectorRow
from services.limits_service.app.models.sequence import (
    Factor,
    ProjectiveLimitReport,
    Subsequence,
    TeichSequence,
    Verdict,
)
from services.metrics_service.app.dto.metrics import LengthRow
from services.metrics_service.app.models.mapping_class import MappingClass
from services.metrics_service.app.services.mapping_class_service import mapping_class_from_record
from services.shared.bh_utilities.errors import (
    EmptyPieceError,
    ReducibleOrPeriodicError,
    SurfaceMismatchError,
)
from services.shared.bh_utilities.settings import LimitsSettings
from services.surface_service.app.core.laminations import leaf_curve_intersection
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.lamination import ClosedLeaf, IrrationalLeaf, Leaf, MeasuredLamination
from services.surface_service.app.models.subsurface import Subsurface
from services.surface_service.app.models.surface import Surface
from services.surface_service.app.services.subsurface_service import lamination_record, piece_record


def _word_key(f: MappingClass) -> tuple:
    return (f.surface_id, f.name, tuple((c.weights, p) for c, p in f.word), f.flips, f.relabel)


class LimitService:
    """Thurston limits of metric sequences, detected from finitely many lengths."""

    def __init__(self, logger, settings: LimitsSettings, metric_service, mapping_class_service):
        self.logger = logger
        self.settings = settings
        self.metric_service = metric_service
        self.mapping_class_service = mapping_class_service
        self._laminations: Dict[tuple, Optional[IrrationalLeaf]] = {}

    def sequence_from_spec(self, surface: Surface, spec: SequenceSpec) -> TeichSequence:
        if spec.surface_id != surface.id:
            raise SurfaceMismatchError(f"sequence on {spec.surface_id}, surface is {surface.id}")
        metrics = None
        if spec.metrics is not None:
            metrics = tuple(self.metric_service.from_record(surface, record) for record in spec.metrics)
        if spec.base is not None:
            base = self.metric_service.from_record(surface, spec.base)
        elif metrics:
            base = metrics[0]
        else:
            base = self.metric_service.symmetric(surface)
        factors = tuple(
            Factor(mapping_class_from_record(surface, factor.mapping_class), factor.rate) for factor in spec.factors
        )
        return TeichSequence(
            surface_id=surface.id,
            base=base,
            factors=factors,
            metrics=metrics,
            modulus=spec.modulus,
            residue=spec.residue,
            name=spec.name,
        )

    def candidate_curves(
        self,
        surface: Surface,
        universe: Sequence[NormalCurve],
        piece: Optional[Subsurface] = None,
        budget: Optional[int] = None,
        order: Optional[Callable[[NormalCurve], object]] = None,
    ) -> CandidateSet:
        candidates = candidate_set(surface, universe, piece, budget, order)
        where = piece.type.label if piece is not None else surface.id
        self.logger.info(
            f"Candidates on {where}: {len(candidates.curves)} curves, {len(candidates.arcs)} arcs"
        )
        return candidates

    def restrict_sequence(
        self, surface: Surface, seq: TeichSequence, piece: Subsurface, universe: Sequence[NormalCurve]
    ) -> TeichSequence:
        """The same sequence with lengths read on the piece only."""
        if piece.surface_id != surface.id:
            raise SurfaceMismatchError(f"piece on {piece.surface_id}, surface is {surface.id}")
        if not curves_in_piece(surface, universe, piece) and not frontier_arcs(surface, piece, ()):
            raise EmptyPieceError(
                f"{piece.type.label} carries no candidate curve or arc", frontier=[list(c.weights) for c in piece.frontier]
            )
        return replace(seq, restriction=piece)

    def factor_laminations(
        self, surface: Surface, seq: TeichSequence, universe: Optional[Sequence[NormalCurve]] = None
    ) -> Tuple[IrrationalLeaf, ...]:
        """Attracting laminations of the generating classes that have one, cached per word."""
        found: List[IrrationalLeaf] = []
        for factor in seq.factors:
            f = factor.mapping_class if factor.rate > 0 else factor.mapping_class.inverse()
            key = _word_key(f)
            if key not in self._laminations:
                try:
                    self._laminations[key] = self.mapping_class_service.stable_lamination(surface, f, universe)
                except ReducibleOrPeriodicError:
                    self._laminations[key] = None
            if self._laminations[key] is not None:
                found.append(self._laminations[key])
        return tuple(found)

    @staticmethod
    def _components(
        surface: Surface, seq: TeichSequence, watched: Sequence[Leaf], laminations: Sequence[IrrationalLeaf]
    ) -> List[Leaf]:
        """Candidate leaves, the twist curves of the factors, then the factor laminations.

        On a piece only factor curves inside it and laminations missing its frontier take part.
        """
        piece = seq.restriction
        components: Dict[str, Leaf] = {leaf.key: leaf for leaf in watched}
        twist_curves = [curve for factor in seq.factors for curve in factor.mapping_class.curves()]
        for curve in curves_in_piece(surface, twist_curves, piece):
            components.setdefault("curve:" + curve.key(), ClosedLeaf(curve))
        frontier = piece.frontier if piece is not None else ()
        for leaf in laminations:
            if all(leaf_curve_intersection(surface, leaf, f) <= detection.ZERO for f in frontier):
                components.setdefault(leaf.key, leaf)
        return list(components.values())

    def thurston_limit(
        self,
        surface: Surface,
        seq: TeichSequence,
        candidates: CandidateSet,
        laminations: Sequence[IrrationalLeaf] = (),
        i_max: Optional[int] = None,
    ) -> ProjectiveLimitReport:
        """Bounded, converging with a reconstructed limit, or inconclusive."""
        try:
            if seq.surface_id != surface.id:
                raise SurfaceMismatchError(f"sequence on {seq.surface_id}, surface is {surface.id}")
            settings = self.settings
            table = length_table(surface, seq, candidates, i_max or settings.i_max, settings.dart_budget)
            piece = seq.restriction
            if table.truncated_at is not None:
                self.logger.warning(
                    f"Sequence {seq.name} truncated at i = {table.truncated_at} by the dart budget {settings.dart_budget}"
                )
            if len(table.indices) < 3:
                return ProjectiveLimitReport(
                    verdict=Verdict.INCONCLUSIVE,
                    limit=None,
                    residual=float("inf"),
                    indices=table.indices,
                    table=table,
                    piece=piece,
                    note=f"only {len(table.indices)} indices within the dart budget",
                )
            values = as_array(table)
            piece_type = piece.type if piece is not None else surface.type
            l_max = settings.l_max if settings.l_max is not None else detection.default_l_max(piece_type)
            top = float(np.max(values))
            if detection.is_bounded(values, l_max):
                self.logger.info(f"Sequence {seq.name} is bounded on {piece_type.label}: longest {top:.4f}")
                return ProjectiveLimitReport(
                    verdict=Verdict.BOUNDED,
                    limit=None,
                    residual=0.0,
                    indices=table.indices,
                    table=table,
                    piece=piece,
                    note=f"longest {top:.4f} <= {l_max:.4f}",
                )

            direction = detection.detect_direction(
                values, settings.max_modulus, settings.tolerance, settings.tail_window
            )
            subsequence = Subsequence(
                modulus=seq.modulus * direction.modulus, residue=seq.residue + seq.modulus * direction.residue
            )
            indices = tuple(table.indices[k] for k in direction.positions)
            inconclusive = replace(
                ProjectiveLimitReport(Verdict.INCONCLUSIVE, None, direction.convergence, indices),
                subsequence=subsequence,
                table=table,
                normalized=direction.history,
                piece=piece,
            )
            if direction.convergence > settings.tolerance:
                self.logger.warning(f"Sequence {seq.name}: no subsequence settles, best {direction.convergence:.3e}")
                return replace(inconclusive, note=f"normalized increments move by {direction.convergence:.3e}")
            if detection.growth(values) <= detection.ZERO:
                self.logger.warning(f"Sequence {seq.name}: lengths exceed {l_max:.4f} but never grow")
                return replace(inconclusive, note=f"longest {top:.4f} > {l_max:.4f} without growth")

            watched = [detection.as_leaf(c) for c in candidates.items]
            components = self._components(surface, seq, watched, laminations)
            found = detection.reconstruct(surface, direction.vector, components, watched, settings.tolerance)
            if found is None:
                self.logger.warning(f"Sequence {seq.name}: no family of components matches the limit direction")
                return replace(inconclusive, note="limit direction matches no family of components")
            residual = max(direction.convergence, found.residual)
            limit = MeasuredLamination(surface.id, found.components, piece=piece)
            self.logger.info(
                f"Sequence {seq.name} converges along {subsequence.label()} to {list(limit.keys())} "
                f"(residual {residual:.3e})"
            )
            return replace(
                inconclusive,
                verdict=Verdict.CONVERGES,
                limit=limit,
                residual=residual,
                laminations=tuple(laminations),
            )
        except Exception as e:
            self.logger.error(f"Thurston limit of {seq.name} on {surface.id} failed: {str(e)}")
            raise

    def report_record(self, surface: Surface, report: ProjectiveLimitReport) -> LimitReportRecord:
        return LimitReportRecord(
            verdict=report.verdict.value,
            subsequence=report.subsequence.label(),
            indices=list(report.indices),
            residual=report.residual,
            limit=lamination_record(surface, report.limit) if report.limit is not None else None,
            piece=piece_record(report.piece) if report.piece is not None else None,
            candidates=list(report.table.keys) if report.table is not None else [],
            truncated_at=report.table.truncated_at if report.table is not None else None,
            note=report.note,
        )

    def vector_rows(self, report: ProjectiveLimitReport) -> List[VectorRow]:
        """Sup-normalized length increments of the detected subsequence, one row per candidate and index."""
        if report.table is None or not report.normalized:
            return []
        rows = []
        for i, vector in zip(report.indices[1:], report.normalized):
            for key, value in zip(report.table.keys, np.asarray(vector, dtype=float)):
                rows.append(VectorRow(i=i, key=key, value=float(value)))
        return rows

    def length_trace(
        self, surface: Surface, seq: TeichSequence, curves: Sequence[NormalCurve], i_max: Optional[int] = None
    ) -> List[LengthRow]:
        """Lengths of the curves along the sequence, one row per index and curve."""
        if seq.surface_id != surface.id:
            raise SurfaceMismatchError(f"sequence on {seq.surface_id}, surface is {surface.id}")
        candidates = CandidateSet(curves=tuple(curves), arcs=(), decomposition=(), frontier=())
        table = length_table(surface, seq, candidates, i_max or self.settings.i_max, self.settings.dart_budget)
        if table.truncated_at is not None:
            self.logger.warning(f"Length trace of {seq.name} stops at i = {table.truncated_at}")
        return [
            LengthRow(i=i, curve_id=curve.key(), length=float(value))
            for i, row in zip(table.indices, table.values)
            for curve, value in zip(curves, row)
        ]
