"""Measured laminations as weighted lists of minimal components."""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from services.surface_service.app.core.arcs import PantsArc
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.subsurface import Subsurface


class LeafKind(str, Enum):
    CLOSED = "closed-curve"
    IRRATIONAL = "irrational"
    ARC = "arc"


def projectively_equal(first: Sequence[float], second: Sequence[float], tolerance: float = 1e-9) -> bool:
    """Sup distance of the two vectors scaled to total 1 is within tolerance."""
    mine = np.asarray(first, dtype=float)
    theirs = np.asarray(second, dtype=float)
    if mine.shape != theirs.shape:
        return False
    return bool(np.max(np.abs(mine / mine.sum() - theirs / theirs.sum())) <= tolerance)


@dataclass(frozen=True)
class ClosedLeaf:
    curve: NormalCurve
    weight: float = 1.0

    kind = LeafKind.CLOSED

    @property
    def key(self) -> str:
        return "curve:" + self.curve.key()


@dataclass(frozen=True)
class IrrationalLeaf:
    """Invariant lamination of a pseudo-Anosov class, tagged by provenance.

    `approximant` is a long curve projectively close to the lamination; its
    weights divided by `scale` stand in for the transverse measure.
    """

    surface_id: str
    provenance: str
    dilatation: float
    cone_basis: Tuple[NormalCurve, ...]
    cone_coordinates: Tuple[float, ...]
    approximant: NormalCurve = field(compare=False, repr=False)
    scale: float = field(default=1.0, compare=False)
    weight: float = 1.0
    support: Optional[Subsurface] = field(default=None, compare=False, repr=False)

    kind = LeafKind.IRRATIONAL

    @property
    def key(self) -> str:
        return "lamination:" + self.provenance

    def same_as(self, other: "IrrationalLeaf", tolerance: float = 1e-9) -> bool:
        if self.provenance != other.provenance:
            return False
        return projectively_equal(self.cone_coordinates, other.cone_coordinates, tolerance)

    def edge_weights(self) -> Tuple[float, ...]:
        return tuple(self.weight * w / self.scale for w in self.approximant.weights)


@dataclass(frozen=True)
class ArcLeaf:
    """Arc class inside a pants of a piece; `frame` is the pants decomposition it lives in."""

    arc: PantsArc
    frame: Tuple[NormalCurve, ...] = field(compare=False, repr=False)
    weight: float = 1.0

    kind = LeafKind.ARC

    @property
    def key(self) -> str:
        return "arc:" + self.arc.label()


Leaf = Union[ClosedLeaf, IrrationalLeaf, ArcLeaf]


@dataclass(frozen=True)
class MeasuredLamination:
    surface_id: str
    components: Tuple[Leaf, ...]
    piece: Optional[Subsurface] = field(default=None, compare=False)

    def keys(self) -> Tuple[str, ...]:
        return tuple(sorted(leaf.key for leaf in self.components))

    def edge_weights(self, n_edges: int) -> Optional[Tuple[float, ...]]:
        """Edge weights on the triangulation; None when the lamination has arcs."""
        total = np.zeros(n_edges)
        for leaf in self.components:
            if isinstance(leaf, ArcLeaf):
                return None
            if isinstance(leaf, ClosedLeaf):
                total += leaf.weight * np.asarray(leaf.curve.weights, dtype=float)
            else:
                total += np.asarray(leaf.edge_weights(), dtype=float)
        return tuple(float(x) for x in total)
