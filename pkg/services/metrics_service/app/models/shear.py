"""Points of Teichmüller space in shear coordinates."""
from dataclasses import dataclass
from typing import Tuple

import numpy as np


@dataclass(frozen=True)
class ShearStructure:
    """Shear per edge of the default triangulation."""

    surface_id: str
    shears: Tuple[float, ...]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.shears, dtype=float)


@dataclass(frozen=True)
class HolonomyMatrix:
    """SL(2,R) holonomy of a closed curve in the shear chart."""

    entries: Tuple[Tuple[float, float], Tuple[float, float]]

    @property
    def trace(self) -> float:
        return self.entries[0][0] + self.entries[1][1]

    @property
    def determinant(self) -> float:
        (a, b), (c, d) = self.entries
        return a * d - b * c

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=float)
