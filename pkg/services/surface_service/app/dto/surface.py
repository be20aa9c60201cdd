from typing import List, Optional

from pydantic import BaseModel, Field


class SurfaceRequest(BaseModel):
    genus: int = Field(ge=0)
    punctures: int = Field(ge=0)


class SurfaceInfo(BaseModel):
    surface_id: str
    genus: int
    punctures: int
    xi: int
    teich_dim: int
    euler_characteristic: int
    triangles: int
    edges: int


class TriangleSide(BaseModel):
    triangle: int
    side: int
    edge: int
    glued_to: List[int]


class TriangulationExport(BaseModel):
    surface_id: str
    triangles: int
    edges: int
    sides: List[TriangleSide]
    puncture_links: List[List[List[int]]]


class CurveRecord(BaseModel):
    surface_id: str
    weights: List[int]


class CurveListing(BaseModel):
    surface_id: str
    max_weight: int
    curves: List[CurveRecord]


class PieceRecord(BaseModel):
    type: str
    genus: int
    punctures: int
    boundaries: int
    puncture_ids: List[int] = []
    frontier: List[List[int]] = []


class LeafRecord(BaseModel):
    kind: str
    key: str
    weight: float
    weights: Optional[List[float]] = None
    provenance: Optional[str] = None
    cone_coordinates: Optional[List[float]] = None
    support: Optional[PieceRecord] = None


class LaminationRecord(BaseModel):
    surface_id: str
    weights: Optional[List[float]] = None
    components: List[LeafRecord]
