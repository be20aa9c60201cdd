from typing import List, Optional

from pydantic import BaseModel, Field

from services.metrics_service.app.dto.metrics import MappingClassRecord, MetricRecord
from services.surface_service.app.dto.surface import LaminationRecord, PieceRecord


class FactorRecord(BaseModel):
    mapping_class: MappingClassRecord
    rate: int = 1


class SequenceSpec(BaseModel):
    """m_i = (f_1^{r_1 i} o ... o f_k^{r_k i}) . m_0, or an explicit list of metrics."""

    surface_id: str
    name: str = "m"
    base: Optional[MetricRecord] = None
    factors: List[FactorRecord] = []
    metrics: Optional[List[MetricRecord]] = None
    i_max: Optional[int] = Field(default=None, ge=2)
    modulus: int = Field(default=1, ge=1)
    residue: int = Field(default=0, ge=0)
    candidate_budget: Optional[int] = Field(default=None, ge=1)
    universe_weight: int = Field(default=2, ge=1)


class LimitReportRecord(BaseModel):
    verdict: str
    subsequence: str
    indices: List[int]
    residual: float
    limit: Optional[LaminationRecord] = None
    piece: Optional[PieceRecord] = None
    candidates: List[str] = []
    truncated_at: Optional[int] = None
    note: str = ""


class VectorRow(BaseModel):
    i: int
    key: str
    value: float
