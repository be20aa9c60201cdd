from typing import List, Optional

from pydantic import BaseModel, Field


class TwistLetter(BaseModel):
    curve: List[int] = Field(description="normal coordinates of the twisting curve")
    power: int


class MappingClassRecord(BaseModel):
    """A flip sequence with the final relabeling, or a word of Dehn twists whose last letter acts first."""

    surface_id: str
    name: str = "f"
    flips: List[int] = Field(default=[], description="edges flipped in order")
    relabel: List[int] = Field(default=[], description="edge l of the flipped triangulation is edge relabel[l]")
    support: Optional[List[List[int]]] = Field(default=None, description="frontier curves of the support")
    word: List[TwistLetter] = []


class MetricRecord(BaseModel):
    surface_id: str
    shears: List[float]


class LengthRow(BaseModel):
    i: int
    curve_id: str
    length: float
