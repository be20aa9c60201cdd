from collections import Counter
from pathlib import Path
from typing import List, Optional

import typer

from services.boundary_service.app.core.invariants import max_height
from services.cli_service.app.core.inputs import load_invariant, parse_curve
from services.cli_service.app.core.runner import Outcome, execute
from services.cli_service.app.core.tables import fields_table, rows_table
from services.cli_service.app.di.containers import ServiceFactory
from services.cli_service.app.dto.cli import PosetRecord
from services.shared.bh_utilities.errors import SchemaViolationError

adherence_app = typer.Typer(help="Adherence heights, towers and the adherence poset", no_args_is_help=True)
simplex_app = typer.Typer(help="Simplices of the curve complex seen through adherence", no_args_is_help=True)


def _invariant_options(invariant, scenario, name) -> dict:
    return {"invariant": invariant, "scenario": scenario, "name": name}


@adherence_app.command("height")
def adherence_height(
    invariant: Optional[Path] = typer.Option(None, "--invariant", help="end invariant JSON"),
    scenario: Optional[Path] = typer.Option(None, "--scenario", help="scenario JSON"),
    name: Optional[str] = typer.Option(None, "--name", help="invariant name inside the scenario"),
    brute_force: bool = typer.Option(False, "--brute-force", help="also search towers (xi <= 6)"),
    out: Optional[Path] = typer.Option(None, "--out", "-o"),
):
    """Adherence height from the quasi-conformal dimension, optionally checked by tower search"""

    def produce() -> Outcome:
        surface, record = load_invariant(ServiceFactory.get_scenario_service(), invariant, scenario, name)
        service = ServiceFactory.get_boundary_service()
        point = service.invariant_from_record(surface, record)
        report = service.adherence_height(surface, point, "brute_force" if brute_force else "formula")
        height = service.height_record(surface, report)
        table = fields_table(
            point.name(),
            {
                "qc_dim": height.qc_dim,
                "formula": height.formula,
                "brute_force": height.brute_force if height.brute_force is not None else "-",
                "agrees": height.agrees,
            },
        )
        return Outcome(height, settings={"enumeration": ServiceFactory.get_settings().enumeration}, table=table)

    execute(
        "adherence height",
        {**_invariant_options(invariant, scenario, name), "brute_force": brute_force, "out": out},
        produce,
        out,
    )


@adherence_app.command("towers")
def adherence_towers(
    invariant: Optional[Path] = typer.Option(None, "--invariant", help="end invariant JSON"),
    scenario: Optional[Path] = typer.Option(None, "--scenario", help="scenario JSON"),
    name: Optional[str] = typer.Option(None, "--name", help="invariant name inside the scenario"),
    limit: int = typer.Option(10, "--limit", min=1, help="most towers to list"),
    out: Optional[Path] = typer.Option(None, "--out", "-o"),
):
    """Longest adherence towers starting at the invariant"""

    def produce() -> Outcome:
        surface, record = load_invariant(ServiceFactory.get_scenario_service(), invariant, scenario, name)
        service = ServiceFactory.get_boundary_service()
        point = service.invariant_from_record(surface, record)
        towers = service.towers(surface, point, limit)
        result = service.towers_record(surface, point, towers)
        table = rows_table(
            f"towers from {point.name()}",
            ["length", "top"],
            [(t.length, t.invariants[-1].name()) for t in towers],
        )
        return Outcome(result, settings={"enumeration": ServiceFactory.get_settings().enumeration}, table=table)

    execute(
        "adherence towers",
        {**_invariant_options(invariant, scenario, name), "limit": limit, "out": out},
        produce,
        out,
    )


@adherence_app.command("poset")
def adherence_poset(
    genus: int = typer.Option(..., "--genus", "-g", min=0),
    punctures: int = typer.Option(..., "--punctures", "-p", min=0),
    out: Path = typer.Option(..., "--out", "-o", help="DOT file of the Hasse diagram"),
    max_weight: Optional[int] = typer.Option(None, "--max-weight", "-w", min=1, help="curves with every edge weight up to this cap"),
    report: Optional[Path] = typer.Option(None, "--report", help="JSON summary; stdout when absent"),
):
    """Adherence order on every enumerated invariant, exported as DOT"""

    def produce() -> Outcome:
        surface = ServiceFactory.get_surface_service().make_surface(genus, punctures)
        poset = ServiceFactory.get_boundary_service().poset(surface, max_weight=max_weight)
        heights = [int(h) for h in poset.heights]
        counts = Counter(heights)
        highest = max(heights, default=0)
        summary = PosetRecord(
            surface_id=surface.id,
            size=len(poset),
            cover_edges=int(poset.covers().sum()),
            max_height=highest,
            formula_max_height=max_height(surface),
            agrees=highest == max_height(surface),
            height_counts={str(h): counts[h] for h in sorted(counts)},
        )
        table = rows_table(f"adherence poset of {surface.id}", ["height", "invariants"], sorted(counts.items()))
        return Outcome(
            summary,
            settings={"enumeration": ServiceFactory.get_settings().enumeration},
            files={out: poset.to_dot()},
            table=table,
        )

    execute(
        "adherence poset",
        {"genus": genus, "punctures": punctures, "out": out, "max_weight": max_weight, "report": report},
        produce,
        report,
    )


@adherence_app.command("approximate")
def adherence_approximate(
    invariant: Optional[Path] = typer.Option(None, "--invariant", help="end invariant JSON with generators"),
    scenario: Optional[Path] = typer.Option(None, "--scenario", help="scenario JSON"),
    name: Optional[str] = typer.Option(None, "--name", help="invariant name inside the scenario"),
    steps: Optional[int] = typer.Option(None, "--steps", min=1),
    out: Optional[Path] = typer.Option(None, "--out", "-o"),
):
    """Regular points converging to the invariant; exit 3 when the sequence does not settle"""

    def produce() -> Outcome:
        surface, record = load_invariant(ServiceFactory.get_scenario_service(), invariant, scenario, name)
        service = ServiceFactory.get_boundary_service()
        point = service.invariant_from_record(surface, record)
        generators = service.generators_from_record(surface, record)
        result = service.approximating_sequence(surface, point, generators, steps)
        approximation = service.approximation_record(surface, result)
        table = rows_table(
            f"approximating {point.name()}",
            ["i", "distance"],
            [(i, max(row)) for i, row in enumerate(approximation.distances)],
        )
        return Outcome(
            approximation,
            settings={"boundary": ServiceFactory.get_settings().boundary},
            table=table,
            inconclusive=not (approximation.converged and approximation.transverse_ok),
        )

    execute(
        "adherence approximate",
        {**_invariant_options(invariant, scenario, name), "steps": steps, "out": out},
        produce,
        out,
    )


@simplex_app.command("check")
def simplex_check(
    curves: List[str] = typer.Option([], "--curve", "-c", help="curve name or comma separated weights; repeatable"),
    genus: Optional[int] = typer.Option(None, "--genus", "-g", min=0),
    punctures: Optional[int] = typer.Option(None, "--punctures", "-p", min=0),
    scenario: Optional[Path] = typer.Option(None, "--scenario", help="scenario JSON naming the curves"),
    out: Optional[Path] = typer.Option(None, "--out", "-o"),
):
    """Whether the curves span a simplex, decided by towers and by disjointness"""

    def produce() -> Outcome:
        resolved = None
        if scenario is not None:
            resolved = ServiceFactory.get_scenario_service().load(scenario)
            surface = resolved.surface
        elif genus is not None and punctures is not None:
            surface = ServiceFactory.get_surface_service().make_surface(genus, punctures)
        else:
            raise SchemaViolationError("give --scenario or both --genus and --punctures", option="--genus")
        if not curves:
            raise SchemaViolationError("at least one --curve is required", option="--curve")
        curve_service = ServiceFactory.get_curve_service()
        chosen = [parse_curve(curve_service, surface, text, resolved) for text in curves]
        service = ServiceFactory.get_boundary_service()
        record = service.simplex_record(surface, service.simplex_check(surface, chosen))
        table = fields_table(
            f"simplex on {surface.id}",
            {"via_towers": record.via_towers, "disjoint": record.disjoint, "agrees": record.agrees},
        )
        return Outcome(record, settings={"enumeration": ServiceFactory.get_settings().enumeration}, table=table)

    execute(
        "simplex check",
        {"curve": curves, "genus": genus, "punctures": punctures, "scenario": scenario, "out": out},
        produce,
        out,
    )
