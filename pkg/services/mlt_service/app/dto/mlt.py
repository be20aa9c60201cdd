from typing import List, Optional

from pydantic import BaseModel

from services.limits_service.app.dto.limits import LimitReportRecord
from services.surface_service.app.dto.surface import LeafRecord, PieceRecord


class SupportRecord(BaseModel):
    key: str
    support: PieceRecord


class LayerRecord(BaseModel):
    depth: int
    subsequence: str
    components: List[LeafRecord]
    supports: List[SupportRecord] = []
    cut: List[str] = []
    pieces: List[LimitReportRecord] = []


class MltResultRecord(BaseModel):
    surface_id: str
    layers: List[LayerRecord]
    surfaces: List[PieceRecord] = []
    subsequences: List[str] = []
    core: List[LeafRecord] = []
    intermediate: List[LeafRecord] = []
    extended: List[LeafRecord] = []


class SandwichRecord(BaseModel):
    surface_id: str
    target: List[str]
    lower_ok: bool
    upper_ok: bool
    missing: List[str] = []
    extra: List[str] = []
    label: Optional[str] = None
