"""Generator words for multi-layered limits: the nested partial pseudo-Anosov example and seeded random words."""
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from services.limits_service.app.models.sequence import Factor, TeichSequence
from services.metrics_service.app.models.mapping_class import MappingClass
from services.metrics_service.app.models.shear import ShearStructure
from services.shared.bh_utilities.errors import ComplexityTooLowError
from services.surface_service.app.core.named import round_curve, round_curves
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.surface import Surface, get_surface


@dataclass(frozen=True)
class NestedExample:
    """Three partial pseudo-Anosov classes on S(0,7).

    f1 lives on the disc around punctures 0,1,2 bounded by q. Away from that
    disc f2 and f3 both twist along c234 only, whose trace there is the loop
    arc at q cutting the pants P bounded by q, c34 and c56. The sequences
    f1^i f2^i and f1^i f3^i therefore share their multi-layered limit.
    """

    surface: Surface
    f1: MappingClass
    f2: MappingClass
    f3: MappingClass
    q: NormalCurve
    c34: NormalCurve
    c56: NormalCurve
    universe: Tuple[NormalCurve, ...]

    def sequence(self, base: ShearStructure, second: MappingClass) -> TeichSequence:
        return TeichSequence(
            self.surface.id, base, (Factor(self.f1), Factor(second)), name=f"{self.f1.name}.{second.name}"
        )


def nested_example() -> NestedExample:
    surface = get_surface(0, 7)

    def c(*punctures: int) -> NormalCurve:
        return round_curve(surface, punctures)

    q = c(0, 1, 2)

    def pair(name: str, positive: NormalCurve, negative: NormalCurve) -> MappingClass:
        return MappingClass(surface.id, ((positive, 1), (negative, -1)), name)

    return NestedExample(
        surface=surface,
        f1=pair("f1", c(0, 1), c(1, 2)),
        f2=pair("f2", c(2, 3, 4), q),
        f3=pair("f3", c(1, 2), c(2, 3, 4)),
        q=q,
        c34=c(3, 4),
        c56=c(5, 6),
        universe=tuple(round_curves(surface)),
    )


def random_factors(surface: Surface, seed: int) -> Tuple[Factor, ...]:
    """Two or three commuting generators drawn from the seed, on disjoint runs of punctures of S(0,n).

    A run of three punctures carries a Penner pair, pseudo-Anosov on the disc
    around the run; a run of two carries a power of the twist about its round curve.
    """
    n = surface.punctures
    if surface.genus != 0 or n < 5:
        raise ComplexityTooLowError(f"{surface.id} has no room for two disjoint generators", punctures=n)
    rng = np.random.default_rng(seed)
    wanted = int(rng.integers(2, 4))
    start = int(rng.integers(n))
    used = 0
    factors: List[Factor] = []
    while len(factors) < wanted:
        room = n - used
        reserve = 2 if not factors else 0
        sizes = [size for size in (2, 3) if size + reserve <= room]
        if not sizes:
            break
        size = int(rng.choice(sizes))
        run = [(start + used + k) % n for k in range(size)]
        used += size
        if size == 3:
            a, b = round_curve(surface, run[:2]), round_curve(surface, run[1:])
            if rng.random() < 0.5:
                a, b = b, a
            word: Tuple[Tuple[NormalCurve, int], ...] = ((a, 1), (b, -1))
        else:
            word = ((round_curve(surface, run), int(rng.choice([-2, -1, 1, 2]))),)
        factors.append(Factor(MappingClass(surface.id, word, f"{'p' if size == 3 else 't'}{seed}.{len(factors)}")))
    return tuple(factors)
