from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from services.metrics_service.app.dto.metrics import MappingClassRecord


class EndingRecord(BaseModel):
    """An ending lamination, given by the pseudo-Anosov class whose attracting lamination it is."""

    provenance: Optional[str] = None
    support_frontier: List[List[int]] = []
    weights: Optional[List[float]] = Field(default=None, description="edge weights of the approximant, scaled")
    generator: Optional[MappingClassRecord] = None


class EndInvariantRecord(BaseModel):
    surface_id: str
    parabolics: List[List[int]] = []
    endings: List[EndingRecord] = []
    label: Optional[str] = None


class HeightRecord(BaseModel):
    surface_id: str
    invariant: EndInvariantRecord
    qc_dim: int
    formula: int
    brute_force: Optional[int] = None
    agrees: bool
    universe_size: int = 0


class TowerRecord(BaseModel):
    length: int
    invariants: List[EndInvariantRecord]


class TowersRecord(BaseModel):
    surface_id: str
    start: EndInvariantRecord
    height: int
    towers: List[TowerRecord]


class SimplexRecord(BaseModel):
    surface_id: str
    curves: List[List[int]]
    via_towers: bool
    disjoint: bool
    agrees: bool
    endpoint: Optional[EndInvariantRecord] = None


class ApproximationRecord(BaseModel):
    surface_id: str
    target: EndInvariantRecord
    points: List[EndInvariantRecord]
    distances: List[List[float]] = []
    converged: bool
    transverse_ok: bool
    tolerance: float


class CertificateRecord(BaseModel):
    surface_id: str
    c: List[int]
    d: List[int]
    terms: int
    weights: List[List[float]]
    distances: List[float]
    heights: List[int]
    checks: Dict[str, bool]
    passed: bool
