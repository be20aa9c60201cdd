from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Union

from services.boundary_service.app.dto.boundary import EndingRecord, EndInvariantRecord
from services.cli_service.app.dto.scenario import ScenarioFile
from services.limits_service.app.dto.limits import FactorRecord, SequenceSpec
from services.metrics_service.app.dto.metrics import MappingClassRecord, TwistLetter
from services.shared.bh_utilities.errors import SchemaViolationError
from services.shared.bh_utilities.schema import load_model
from services.surface_service.app.core.named import round_curve
from services.surface_service.app.models.curve import NormalCurve
from services.surface_service.app.models.surface import Surface

SCENARIO_DIR = Path(__file__).parent.parent.parent.parent / "config" / "scenarios"


@dataclass
class ResolvedScenario:
    surface: Surface
    curves: Dict[str, NormalCurve] = field(default_factory=dict)
    mapping_classes: Dict[str, MappingClassRecord] = field(default_factory=dict)
    sequences: Dict[str, SequenceSpec] = field(default_factory=dict)
    invariants: Dict[str, EndInvariantRecord] = field(default_factory=dict)


def _lookup(table: dict, name: str, pointer: str, kind: str):
    if name not in table:
        raise SchemaViolationError(f"{kind} {name!r} is used before it is defined at {pointer}", pointer=pointer)
    return table[name]


def _define(table: dict, name: str, pointer: str) -> None:
    if name in table:
        raise SchemaViolationError(f"{name!r} is defined twice at {pointer}", pointer=pointer)


class ScenarioService:
    """Scenario files: named objects resolved in order into the records the services consume."""

    def __init__(self, logger, surface_service, curve_service):
        self.logger = logger
        self.surface_service = surface_service
        self.curve_service = curve_service

    def load(self, path: Union[str, Path]) -> ResolvedScenario:
        return self.resolve(load_model(path, ScenarioFile))

    def shipped(self, name: str) -> ResolvedScenario:
        return self.load(SCENARIO_DIR / f"{name}.json")

    def resolve(self, scenario: ScenarioFile) -> ResolvedScenario:
        try:
            surface = self.surface_service.make_surface(scenario.surface.genus, scenario.surface.punctures)
            resolved = ResolvedScenario(surface)

            for k, named in enumerate(scenario.curves):
                pointer = f"/curves/{k}"
                _define(resolved.curves, named.name, pointer + "/name")
                if named.punctures is not None:
                    try:
                        curve = round_curve(surface, named.punctures)
                    except ValueError as e:
                        raise SchemaViolationError(f"{e} at {pointer}/punctures", pointer=pointer + "/punctures")
                else:
                    curve = self.curve_service.canonicalize(surface, named.weights)
                resolved.curves[named.name] = curve

            for k, named in enumerate(scenario.mapping_classes):
                pointer = f"/mapping_classes/{k}"
                _define(resolved.mapping_classes, named.name, pointer + "/name")
                letters = [
                    TwistLetter(
                        curve=list(_lookup(resolved.curves, letter.curve, f"{pointer}/word/{j}/curve", "curve").weights),
                        power=letter.power,
                    )
                    for j, letter in enumerate(named.word)
                ]
                resolved.mapping_classes[named.name] = MappingClassRecord(
                    surface_id=surface.id, name=named.name, word=letters, flips=named.flips, relabel=named.relabel
                )

            for k, named in enumerate(scenario.sequences):
                pointer = f"/sequences/{k}"
                _define(resolved.sequences, named.name, pointer + "/name")
                factors = [
                    FactorRecord(
                        mapping_class=_lookup(
                            resolved.mapping_classes, factor.mapping_class, f"{pointer}/factors/{j}/mapping_class", "mapping class"
                        ),
                        rate=factor.rate,
                    )
                    for j, factor in enumerate(named.factors)
                ]
                resolved.sequences[named.name] = SequenceSpec(
                    surface_id=surface.id,
                    name=named.name,
                    factors=factors,
                    i_max=named.i_max,
                    modulus=named.modulus,
                    residue=named.residue,
                    candidate_budget=named.candidate_budget,
                    universe_weight=named.universe_weight,
                )

            for k, named in enumerate(scenario.invariants):
                pointer = f"/invariants/{k}"
                _define(resolved.invariants, named.name, pointer + "/name")
                parabolics = [
                    list(_lookup(resolved.curves, name, f"{pointer}/parabolics/{j}", "curve").weights)
                    for j, name in enumerate(named.parabolics)
                ]
                endings: List[EndingRecord] = []
                for j, ending in enumerate(named.endings):
                    where = f"{pointer}/endings/{j}"
                    generator = _lookup(resolved.mapping_classes, ending.mapping_class, where + "/mapping_class", "mapping class")
                    frontier = [
                        list(_lookup(resolved.curves, name, f"{where}/support_frontier/{i}", "curve").weights)
                        for i, name in enumerate(ending.support_frontier)
                    ]
                    endings.append(
                        EndingRecord(provenance=f"stable({generator.name})", support_frontier=frontier, generator=generator)
                    )
                resolved.invariants[named.name] = EndInvariantRecord(
                    surface_id=surface.id, parabolics=parabolics, endings=endings, label=named.name
                )

            self.logger.info(
                f"Scenario on {surface.id}: {len(resolved.curves)} curves, {len(resolved.mapping_classes)} mapping classes, "
                f"{len(resolved.sequences)} sequences, {len(resolved.invariants)} invariants"
            )
            return resolved
        except Exception as e:
            self.logger.error(f"Scenario could not be resolved: {str(e)}")
            raise
