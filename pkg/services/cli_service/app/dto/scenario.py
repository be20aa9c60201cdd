from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from services.surface_service.app.dto.surface import SurfaceRequest


class NamedCurve(BaseModel):
    """A curve given by normal coordinates or, on a punctured sphere, by the punctures it encloses."""

    name: str
    weights: Optional[List[int]] = None
    punctures: Optional[List[int]] = None

    @model_validator(mode="after")
    def one_description(self):
        if (self.weights is None) == (self.punctures is None):
            raise ValueError("give exactly one of weights or punctures")
        return self


class NamedLetter(BaseModel):
    curve: str
    power: int


class NamedMappingClass(BaseModel):
    """Twist word over named curves, last letter acting first, or a flip sequence with its relabeling."""

    name: str
    word: List[NamedLetter] = []
    flips: List[int] = []
    relabel: List[int] = []

    @model_validator(mode="after")
    def one_presentation(self):
        if self.word and (self.flips or self.relabel):
            raise ValueError("give either a twist word or flips with a relabeling")
        return self


class NamedFactor(BaseModel):
    mapping_class: str
    rate: int = Field(default=1, ge=1)


class NamedSequence(BaseModel):
    name: str
    factors: List[NamedFactor]
    i_max: Optional[int] = Field(default=None, ge=2)
    modulus: int = Field(default=1, ge=1)
    residue: int = Field(default=0, ge=0)
    candidate_budget: Optional[int] = Field(default=None, ge=1)
    universe_weight: int = Field(default=2, ge=1)


class NamedEnding(BaseModel):
    mapping_class: str
    support_frontier: List[str] = []


class NamedInvariant(BaseModel):
    name: str
    parabolics: List[str] = []
    endings: List[NamedEnding] = []


class ScenarioFile(BaseModel):
    """Named curves, mapping classes, sequences and end invariants on one surface."""

    schema_version: Literal[1] = 1
    description: str = ""
    surface: SurfaceRequest
    curves: List[NamedCurve] = []
    mapping_classes: List[NamedMappingClass] = []
    sequences: List[NamedSequence] = []
    invariants: List[NamedInvariant] = []
