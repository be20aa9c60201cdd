from typing import List, Sequence, Union

from services.surface_service.app.core import curves as curve_ops
from services.surface_service.app.core.laminations import lamination_intersection
from services.surface_service.app.dto.surface import CurveListing, CurveRecord
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.lamination import ClosedLeaf, MeasuredLamination
from services.surface_service.app.models.surface import Surface
from services.shared.bh_utilities.errors import SurfaceMismatchError

CurveOrLamination = Union[NormalCurve, MeasuredLamination]


def as_lamination(item: CurveOrLamination) -> MeasuredLamination:
    if isinstance(item, MeasuredLamination):
        return item
    return MeasuredLamination(item.surface_id, (ClosedLeaf(item),))


class CurveService:
    """Canonical curves and intersection numbers on one surface."""

    def __init__(self, logger):
        self.logger = logger

    def canonicalize(self, surface: Surface, weights: Sequence[int]) -> NormalCurve:
        try:
            curve = curve_ops.canonicalize(surface, weights)
            self.logger.info(f"Canonical curve on {surface.id}: {curve.key()}")
            return curve
        except Exception as e:
            self.logger.error(f"Rejected weights {list(weights)} on {surface.id}: {str(e)}")
            raise

    def intersection_number(self, surface: Surface, first: CurveOrLamination, second: CurveOrLamination) -> float:
        for item in (first, second):
            if item.surface_id != surface.id:
                raise SurfaceMismatchError(
                    f"{item.surface_id} is not {surface.id}", expected=surface.id, found=item.surface_id
                )
        if isinstance(first, NormalCurve) and isinstance(second, NormalCurve):
            return curve_ops.intersection(surface, first, second)
        return lamination_intersection(surface, as_lamination(first), as_lamination(second))

    def enumerate(self, surface: Surface, max_weight: int) -> List[NormalCurve]:
        curves = curve_ops.enumerate_curves(surface, max_weight)
        self.logger.info(f"Enumerated {len(curves)} curves on {surface.id} with weights <= {max_weight}")
        return curves

    def listing(self, surface: Surface, max_weight: int) -> CurveListing:
        return CurveListing(
            surface_id=surface.id,
            max_weight=max_weight,
            curves=[CurveRecord(surface_id=surface.id, weights=list(c.weights)) for c in self.enumerate(surface, max_weight)],
        )
