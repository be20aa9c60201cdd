"""Metric sequences and the reports of their projective limits."""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from services.metrics_service.app.models.mapping_class import MappingClass
from services.metrics_service.app.models.shear import ShearStructure
from services.surface_service.app.models.lamination import IrrationalLeaf, MeasuredLamination
from services.surface_service.app.models.subsurface import Subsurface


@dataclass(frozen=True)
class Factor:
    """f^(rate * i) inside the word generating m_i."""

    mapping_class: MappingClass
    rate: int = 1


@dataclass(frozen=True)
class TeichSequence:
    """m_i = (f_1^{r_1 i} o ... o f_k^{r_k i}) . m_0, or an explicit list of metrics.

    `removed` lists the frontier curves and subsurfaces cut away by earlier
    layers; `restriction` is the piece the lengths are read on, with its
    boundary lengths left free.
    """

    surface_id: str
    base: ShearStructure
    factors: Tuple[Factor, ...] = ()
    metrics: Optional[Tuple[ShearStructure, ...]] = None
    restriction: Optional[Subsurface] = None
    modulus: int = 1
    residue: int = 0
    name: str = "m"

    @property
    def is_explicit(self) -> bool:
        return self.metrics is not None

    def indices(self, i_max: int) -> List[int]:
        last = i_max if self.metrics is None else min(i_max, len(self.metrics) - 1)
        return [i for i in range(last + 1) if i % self.modulus == self.residue]

    def word_at(self, i: int) -> MappingClass:
        word = MappingClass.identity(self.surface_id)
        for factor in self.factors:
            word = word.compose(factor.mapping_class.power(factor.rate * i))
        return word


class Verdict(str, Enum):
    BOUNDED = "bounded"
    CONVERGES = "converges"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Subsequence:
    modulus: int = 1
    residue: int = 0

    def label(self) -> str:
        return f"i = {self.residue} mod {self.modulus}"

    def meet(self, other: "Subsequence") -> Optional["Subsequence"]:
        """The indices lying in both, or None when there are none."""
        g = math.gcd(self.modulus, other.modulus)
        if (self.residue - other.residue) % g:
            return None
        modulus = self.modulus // g * other.modulus
        wanted = other.residue % other.modulus
        residue = next(i for i in range(self.residue % self.modulus, modulus, self.modulus) if i % other.modulus == wanted)
        return Subsequence(modulus, residue)


@dataclass(frozen=True)
class LengthTable:
    """Lengths of every candidate at every evaluated index."""

    indices: Tuple[int, ...]
    keys: Tuple[str, ...]
    values: Tuple[Tuple[float, ...], ...]
    truncated_at: Optional[int] = None


@dataclass(frozen=True)
class ProjectiveLimitReport:
    verdict: Verdict
    limit: Optional[MeasuredLamination]
    residual: float
    indices: Tuple[int, ...]
    subsequence: Subsequence = Subsequence()
    table: Optional[LengthTable] = field(default=None, repr=False)
    normalized: Tuple[Tuple[float, ...], ...] = field(default=(), repr=False)
    piece: Optional[Subsurface] = field(default=None, compare=False)
    laminations: Tuple[IrrationalLeaf, ...] = field(default=(), compare=False, repr=False)
    note: str = ""
