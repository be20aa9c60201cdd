from typing import List, Optional, Sequence

import numpy as np

from services.metrics_service.app.core import holonomy as hol
from services.metrics_service.app.core.action import check_on_surface
from services.metrics_service.app.core.presentation import as_flips
from services.metrics_service.app.dto.metrics import LengthRow, MetricRecord
from services.metrics_service.app.models.mapping_class import MappingClass
from services.metrics_service.app.models.shear import HolonomyMatrix, ShearStructure
from services.shared.bh_utilities.errors import SurfaceMismatchError
from services.shared.bh_utilities.parallel import ordered_map
from services.surface_service.app.core.flips import act_on_shears
from services.surface_service.app.core.paths import Path
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.surface import Surface


class MetricService:
    """Complete hyperbolic structures in shear coordinates and their length functions."""

    def __init__(self, logger):
        self.logger = logger

    def symmetric(self, surface: Surface) -> ShearStructure:
        return ShearStructure(surface.id, tuple(0.0 for _ in range(surface.triangulation.n_edges)))

    def random(self, surface: Surface, seed: Optional[int] = None, sigma: float = 1.0) -> ShearStructure:
        shears = hol.random_shears(surface, seed, sigma)
        self.logger.info(f"Random complete structure on {surface.id} (seed {seed}, sigma {sigma})")
        return ShearStructure(surface.id, tuple(float(z) for z in shears))

    def from_shears(self, surface: Surface, shears: Sequence[float]) -> ShearStructure:
        try:
            hol.check_complete(surface, shears)
        except Exception as e:
            self.logger.error(f"Rejected shears on {surface.id}: {str(e)}")
            raise
        return ShearStructure(surface.id, tuple(float(z) for z in shears))

    def _check(self, surface: Surface, metric: ShearStructure, *ids: str) -> None:
        for surface_id in (metric.surface_id,) + ids:
            if surface_id != surface.id:
                raise SurfaceMismatchError(f"object on {surface_id}, surface is {surface.id}")
        hol.check_complete(surface, metric.shears)

    def geodesic_length(self, surface: Surface, metric: ShearStructure, curve: NormalCurve) -> float:
        try:
            self._check(surface, metric, curve.surface_id)
            return hol.path_length(surface, metric.shears, curve.path)
        except Exception as e:
            self.logger.error(f"Length of {curve.key()} failed on {surface.id}: {str(e)}")
            raise

    def path_length(self, surface: Surface, metric: ShearStructure, path: Path) -> float:
        """Length of a closed dart path."""
        return hol.path_length(surface, metric.shears, path)

    def lengths(self, surface: Surface, metric: ShearStructure, curves: Sequence[NormalCurve]) -> List[float]:
        self._check(surface, metric, *(c.surface_id for c in curves))
        values = ordered_map(lambda c: self.geodesic_length(surface, metric, c), curves)
        self.logger.info(f"Evaluated {len(values)} lengths on {surface.id}")
        return values

    def holonomy(self, surface: Surface, metric: ShearStructure, curve: NormalCurve) -> HolonomyMatrix:
        self._check(surface, metric, curve.surface_id)
        matrix = hol.holonomy(surface, metric.shears, curve.path)
        return HolonomyMatrix(tuple(tuple(float(x) for x in row) for row in matrix))

    def apply_to_metric(self, surface: Surface, f: MappingClass, metric: ShearStructure) -> ShearStructure:
        """f.m: shears carried through every flip of f, then moved by its relabeling."""
        check_on_surface(surface, f, metric.surface_id)
        if f.is_identity:
            return metric
        try:
            presented = as_flips(surface, f)
            shears = act_on_shears(surface.triangulation, presented.flips, presented.relabel, metric.shears)
        except Exception as e:
            self.logger.error(f"Pushing the metric on {surface.id} by {f.name} failed: {str(e)}")
            raise
        self.logger.info(f"Pushed metric on {surface.id} forward by {f.name} ({len(presented.flips)} flips)")
        return ShearStructure(surface.id, tuple(float(z) for z in shears))

    def length_rows(
        self, surface: Surface, metrics: Sequence[ShearStructure], curves: Sequence[NormalCurve]
    ) -> List[LengthRow]:
        rows = []
        for i, metric in enumerate(metrics):
            for curve, value in zip(curves, self.lengths(surface, metric, curves)):
                rows.append(LengthRow(i=i, curve_id=curve.key(), length=value))
        return rows

    def record(self, metric: ShearStructure) -> MetricRecord:
        return MetricRecord(surface_id=metric.surface_id, shears=list(metric.shears))

    def cusp_sums(self, surface: Surface, metric: ShearStructure) -> np.ndarray:
        return hol.cusp_sums(surface, metric.shears)

    def from_record(self, surface: Surface, record: MetricRecord) -> ShearStructure:
        if record.surface_id != surface.id:
            raise SurfaceMismatchError(f"metric on {record.surface_id}, surface is {surface.id}")
        return self.from_shears(surface, record.shears)
