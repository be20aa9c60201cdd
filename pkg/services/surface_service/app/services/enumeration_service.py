from functools import lru_cache
from typing import Optional

from services.shared.bh_utilities.settings import EnumerationSettings
from services.surface_service.app.core.enumeration import CurveUniverse, build_universe
from services.surface_service.app.models.surface import Surface


@lru_cache(maxsize=16)
def _universe(surface: Surface, weight_cap: int) -> CurveUniverse:
    return build_universe(surface, weight_cap)


class EnumerationService:
    """Finite curve universes used by minimality checks and brute-force searches."""

    def __init__(self, logger, settings: EnumerationSettings):
        self.logger = logger
        self.settings = settings

    def universe(self, surface: Surface, weight_cap: Optional[int] = None) -> CurveUniverse:
        cap = self.settings.weight_cap if weight_cap is None else weight_cap
        universe = _universe(surface, cap)
        self.logger.info(f"Curve universe on {surface.id}: {len(universe.curves)} curves under weight cap {cap}")
        return universe
