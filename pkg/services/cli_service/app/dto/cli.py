from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from services.metrics_service.app.dto.metrics import LengthRow
from services.mlt_service.app.dto.mlt import MltResultRecord, SandwichRecord
from services.surface_service.app.dto.surface import SurfaceInfo, TriangulationExport


class Meta(BaseModel):
    """Effective values of every flag and setting that shaped the result."""

    command: str
    run_id: str
    version: str
    options: Dict[str, Any] = {}
    settings: Dict[str, Any] = {}


class Report(BaseModel):
    meta: Meta
    result: Any


class SurfaceReport(BaseModel):
    info: SurfaceInfo
    triangulation: Optional[TriangulationExport] = None


class LengthTraceRecord(BaseModel):
    surface_id: str
    sequence: str
    curves: List[str]
    rows: List[LengthRow]


class PosetRecord(BaseModel):
    """Summary of an enumerated adherence poset; the order itself goes to the DOT file."""

    surface_id: str
    size: int
    cover_edges: int
    max_height: int
    formula_max_height: int
    agrees: bool
    height_counts: Dict[str, int]


class DemoRemarkRecord(BaseModel):
    surface_id: str
    sequences: Dict[str, MltResultRecord]
    same_result: bool
    pants_curves: List[str]
    extended_minus_intermediate: List[str]
    sandwiches: List[SandwichRecord]
    reproduced: bool
    note: Optional[str] = None
