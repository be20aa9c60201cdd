"""Mapping classes as flip sequences with a final relabeling, or as words in Dehn twists."""
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from services.surface_service.app.core.flips import (
    cancel_repeats,
    compose_presentations,
    invert_presentation,
)
from services.surface_service.app.models.curve import NormalCurve

Letter = Tuple[NormalCurve, int]


@dataclass(frozen=True)
class MappingClass:
    """A flip presentation (flips, relabel) or a twist word; never both.

    Flip presentation: flipping `flips` in order from the default triangulation
    gives a triangulation whose edge l is carried onto edge relabel[l].

    Twist word: f = T_{c1}^{e1} o T_{c2}^{e2} o ... ; the rightmost letter acts
    first and positive exponents are left twists. Words compile to flips on a
    surface, see core.presentation.
    """

    surface_id: str
    word: Tuple[Letter, ...] = ()
    name: str = "id"
    flips: Tuple[int, ...] = ()
    relabel: Tuple[int, ...] = ()
    support: Tuple[NormalCurve, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.word and self.is_flip_presented:
            raise ValueError(f"{self.name} mixes a twist word with a flip sequence")
        if self.flips and not self.relabel:
            raise ValueError(f"{self.name} has flips but no relabeling")

    @classmethod
    def identity(cls, surface_id: str) -> "MappingClass":
        return cls(surface_id, (), "id")

    @classmethod
    def twist(cls, curve: NormalCurve, power: int = 1, name: Optional[str] = None) -> "MappingClass":
        label = name or f"T[{curve.key()}]^{power}"
        return cls(curve.surface_id, ((curve, power),), label)

    @classmethod
    def from_flips(
        cls,
        surface_id: str,
        flips: Sequence[int],
        relabel: Sequence[int],
        name: str = "f",
        support: Sequence[NormalCurve] = (),
    ) -> "MappingClass":
        return cls(surface_id, (), name, tuple(flips), tuple(relabel), tuple(support))

    @property
    def is_flip_presented(self) -> bool:
        return bool(self.flips or self.relabel)

    @property
    def is_identity(self) -> bool:
        if self.is_flip_presented:
            return not cancel_repeats(self.flips) and self.relabel == tuple(range(len(self.relabel)))
        return not self.simplified().word

    def simplified(self) -> "MappingClass":
        """Merge adjacent letters on the same curve and drop zero exponents; cancel repeated flips."""
        if self.is_flip_presented:
            return MappingClass(self.surface_id, (), self.name, cancel_repeats(self.flips), self.relabel, self.support)
        merged = []
        for curve, power in self.word:
            if merged and merged[-1][0].weights == curve.weights:
                merged[-1] = (merged[-1][0], merged[-1][1] + power)
                if merged[-1][1] == 0:
                    merged.pop()
            elif power:
                merged.append((curve, power))
        return MappingClass(self.surface_id, tuple(merged), self.name)

    def inverse(self) -> "MappingClass":
        name = f"({self.name})^-1"
        if self.is_flip_presented:
            flips, relabel = invert_presentation(self.flips, self.relabel)
            return MappingClass(self.surface_id, (), name, flips, relabel, self.support)
        word = tuple((curve, -power) for curve, power in reversed(self.word))
        return MappingClass(self.surface_id, word, name)

    def compose(self, other: "MappingClass") -> "MappingClass":
        """self o other."""
        name = f"{self.name}*{other.name}"
        if not self.is_flip_presented and not other.is_flip_presented:
            return MappingClass(self.surface_id, self.word + other.word, name)
        if not self.word and not self.is_flip_presented:
            return MappingClass(other.surface_id, (), name, other.flips, other.relabel, other.support)
        if not other.word and not other.is_flip_presented:
            return MappingClass(self.surface_id, (), name, self.flips, self.relabel, self.support)
        if self.word or other.word:
            raise ValueError(f"compile the twist words of {name} to flips before composing")
        flips, relabel = compose_presentations((self.flips, self.relabel), (other.flips, other.relabel))
        return MappingClass(self.surface_id, (), name, flips, relabel)

    def power(self, n: int) -> "MappingClass":
        if n == 0:
            return MappingClass.identity(self.surface_id)
        base = self if n > 0 else self.inverse()
        if base.is_flip_presented:
            result = base
            for _ in range(abs(n) - 1):
                result = result.compose(base)
            return MappingClass(
                self.surface_id, (), f"({self.name})^{n}", result.flips, result.relabel, self.support
            )
        word: Tuple[Letter, ...] = ()
        for _ in range(abs(n)):
            word = word + base.word
        return MappingClass(self.surface_id, word, f"({self.name})^{n}")

    def curves(self) -> Tuple[NormalCurve, ...]:
        seen = {}
        for curve, _ in self.word:
            seen.setdefault(curve.weights, curve)
        return tuple(seen.values())

    def describe(self) -> dict:
        if self.is_flip_presented:
            return {"name": self.name, "flips": list(self.flips), "relabel": list(self.relabel)}
        return {
            "name": self.name,
            "word": [{"curve": list(c.weights), "power": p} for c, p in self.word],
        }


def compose_all(surface_id: str, classes: Sequence[MappingClass]) -> MappingClass:
    result = MappingClass.identity(surface_id)
    for f in classes:
        result = result.compose(f)
    return result
