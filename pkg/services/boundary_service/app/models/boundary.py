from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from services.boundary_service.app.models.end_invariant import EndInvariant
from services.surface_service.app.models.curve import NormalCurve


@dataclass(frozen=True)
class AdherenceTower:
    """a_0, ..., a_n with e(a_j) strictly containing e(a_{j-1}); n is the length."""

    invariants: Tuple[EndInvariant, ...]

    @property
    def length(self) -> int:
        return len(self.invariants) - 1


@dataclass(frozen=True)
class HeightReport:
    invariant: EndInvariant
    qc_dim: int
    formula: int
    brute_force: Optional[int] = None
    universe_size: int = 0

    @property
    def agrees(self) -> bool:
        return self.brute_force is None or self.brute_force == self.formula


@dataclass(frozen=True)
class SimplexReport:
    curves: Tuple[NormalCurve, ...]
    via_towers: bool
    disjoint: bool
    endpoint: Optional[EndInvariant] = None

    @property
    def agrees(self) -> bool:
        return self.via_towers == self.disjoint


@dataclass(frozen=True)
class ApproximatingSequence:
    """Regular points a_i converging to a boundary point, one approximant curve per ending at each step."""

    target: EndInvariant
    points: Tuple[EndInvariant, ...]
    distances: Tuple[Tuple[float, ...], ...] = ()
    transverse_ok: bool = True
    tolerance: float = 1e-6

    @property
    def converged(self) -> bool:
        if not self.distances:
            return True
        return all(d <= self.tolerance for d in self.distances[-1])


@dataclass(frozen=True)
class MismatchCertificate:
    """Finite facts showing the boundary and UML0 topologies disagree at the pair c, d."""

    surface_id: str
    c: NormalCurve
    d: NormalCurve
    terms: int
    weights: Tuple[Tuple[float, ...], ...]
    distances: Tuple[float, ...]
    heights: Tuple[int, int]
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())
