"""Command inputs: sequences, curves and end invariants from JSON files or scenario names."""
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from services.boundary_service.app.dto.boundary import EndInvariantRecord
from services.cli_service.app.services.scenario_service import ResolvedScenario, ScenarioService
from services.limits_service.app.dto.limits import SequenceSpec
from services.shared.bh_utilities.errors import BersError, SchemaViolationError
from services.shared.bh_utilities.schema import load_model
from services.shared.bh_utilities.settings import LimitsSettings
from services.surface_service.app.core.named import round_curves
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.surface import Surface, surface_from_id

UNIVERSES = ("enumerated", "round")


@dataclass
class SequenceInput:
    surface: Surface
    spec: SequenceSpec
    scenario: Optional[ResolvedScenario] = None


def _surface(surface_id: str, pointer: str) -> Surface:
    try:
        return surface_from_id(surface_id)
    except BersError:
        raise
    except ValueError as e:
        raise SchemaViolationError(f"{e} at {pointer}", pointer=pointer)


def _named(table: dict, name: str, kind: str, option: str):
    if name not in table:
        known = ", ".join(sorted(table)) or "none"
        raise SchemaViolationError(f"{kind} {name!r} is not defined (known: {known})", option=option)
    return table[name]


def load_sequence(
    scenarios: ScenarioService, seq: Optional[Path], scenario: Optional[Path], name: Optional[str]
) -> SequenceInput:
    """Either --seq file.json or --scenario file.json with --sequence name."""
    if (seq is None) == (scenario is None):
        raise SchemaViolationError("give exactly one of --seq or --scenario", option="--seq")
    if seq is not None:
        spec = load_model(seq, SequenceSpec)
        return SequenceInput(_surface(spec.surface_id, "/surface_id"), spec)
    resolved = scenarios.load(scenario)
    if name is None:
        if len(resolved.sequences) != 1:
            raise SchemaViolationError("--sequence is required when the scenario defines several", option="--sequence")
        name = next(iter(resolved.sequences))
    return SequenceInput(resolved.surface, _named(resolved.sequences, name, "sequence", "--sequence"), resolved)


def load_invariant(
    scenarios: ScenarioService, invariant: Optional[Path], scenario: Optional[Path], name: Optional[str]
) -> Tuple[Surface, EndInvariantRecord]:
    """Either --invariant file.json or --scenario file.json with --name."""
    if (invariant is None) == (scenario is None):
        raise SchemaViolationError("give exactly one of --invariant or --scenario", option="--invariant")
    if invariant is not None:
        record = load_model(invariant, EndInvariantRecord)
        return _surface(record.surface_id, "/surface_id"), record
    resolved = scenarios.load(scenario)
    if name is None:
        raise SchemaViolationError("--name is required with --scenario", option="--name")
    return resolved.surface, _named(resolved.invariants, name, "invariant", "--name")


def parse_curve(
    curve_service, surface: Surface, text: str, scenario: Optional[ResolvedScenario] = None
) -> NormalCurve:
    """A scenario curve name, or comma separated normal coordinates."""
    if scenario is not None and text in scenario.curves:
        return scenario.curves[text]
    try:
        weights = [int(part) for part in text.split(",")]
    except ValueError:
        raise SchemaViolationError(f"{text!r} is neither a curve name nor comma separated integers", option="--curve")
    return curve_service.canonicalize(surface, weights)


def sequence_universe(
    curve_service, surface: Surface, spec: SequenceSpec, kind: str = "enumerated"
) -> List[NormalCurve]:
    """Curves the limit engines watch: round curves, or curves up to the sequence's universe weight plus the twist curves."""
    if kind not in UNIVERSES:
        raise SchemaViolationError(f"unknown universe {kind!r}, expected one of {list(UNIVERSES)}", option="--universe")
    if kind == "round":
        if surface.genus != 0:
            raise SchemaViolationError(f"round curves need a punctured sphere, not {surface.id}", option="--universe")
        return round_curves(surface)
    found = {c.weights: c for c in curve_service.enumerate(surface, spec.universe_weight)}
    for factor in spec.factors:
        for letter in factor.mapping_class.word:
            curve = curve_service.canonicalize(surface, letter.curve)
            found.setdefault(curve.weights, curve)
    return [found[w] for w in sorted(found, key=lambda w: (sum(w), w))]


def curve_names(scenario: Optional[ResolvedScenario], curves: Sequence[NormalCurve]) -> List[str]:
    if scenario is None:
        return [c.key() for c in curves]
    names = {c.weights: name for name, c in scenario.curves.items()}
    return [names.get(c.weights, c.key()) for c in curves]


def limit_settings(base: LimitsSettings, **overrides) -> LimitsSettings:
    """Config values with every flag that was given laid over them."""
    return base.model_copy(update={k: v for k, v in overrides.items() if v is not None})
