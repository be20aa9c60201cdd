from pathlib import Path
from typing import Optional

import typer

from services.cli_service.app.core.inputs import limit_settings, load_invariant, load_sequence, sequence_universe
from services.cli_service.app.core.runner import Outcome, execute
from services.cli_service.app.core.tables import fields_table, rows_table
from services.cli_service.app.di.containers import ServiceFactory
from services.mlt_service.app.dto.mlt import MltResultRecord
from services.shared.bh_utilities.errors import SurfaceMismatchError
from services.shared.bh_utilities.schema import load_report_body

mlt_app = typer.Typer(help="Multi-layered Thurston limits and the sandwich check", no_args_is_help=True)


@mlt_app.command("run")
def mlt_run(
    seq: Optional[Path] = typer.Option(None, "--seq", help="sequence JSON"),
    scenario: Optional[Path] = typer.Option(None, "--scenario", help="scenario JSON"),
    sequence: Optional[str] = typer.Option(None, "--sequence", help="sequence name inside the scenario"),
    budget: Optional[int] = typer.Option(None, "--budget", min=1, help="candidate curves per piece"),
    i_max: Optional[int] = typer.Option(None, "--imax", min=2),
    tol: Optional[float] = typer.Option(None, "--tol", min=0.0, help="projective tolerance"),
    dart_budget: Optional[int] = typer.Option(None, "--dart-budget", min=1),
    universe: str = typer.Option("enumerated", "--universe", help="enumerated or round"),
    out: Optional[Path] = typer.Option(None, "--out", "-o"),
):
    """Layers, bounded pieces and the core, intermediate and extended unions"""

    def produce() -> Outcome:
        given = load_sequence(ServiceFactory.get_scenario_service(), seq, scenario, sequence)
        surface, spec = given.surface, given.spec
        settings = limit_settings(
            ServiceFactory.get_settings().limits, i_max=i_max or spec.i_max, tolerance=tol, dart_budget=dart_budget
        )
        service = ServiceFactory.get_mlt_service(settings)
        watched = sequence_universe(ServiceFactory.get_curve_service(), surface, spec, universe)
        teich_sequence = service.limit_service.sequence_from_spec(surface, spec)
        result = service.multi_layered_limit(surface, teich_sequence, watched, budget or spec.candidate_budget)
        record = service.result_record(surface, result)
        table = rows_table(
            f"{spec.name} on {surface.id}",
            ["depth", "subsequence", "components"],
            [(layer.depth, layer.subsequence, ", ".join(c.key for c in layer.components)) for layer in record.layers],
        )
        return Outcome(
            record,
            settings={"limits": settings, "candidate_budget": budget or spec.candidate_budget, "universe": universe},
            table=table,
        )

    execute(
        "mlt run",
        {
            "seq": seq,
            "scenario": scenario,
            "sequence": sequence,
            "budget": budget,
            "imax": i_max,
            "tol": tol,
            "dart_budget": dart_budget,
            "universe": universe,
            "out": out,
        },
        produce,
        out,
    )


@mlt_app.command("sandwich")
def mlt_sandwich(
    result: Path = typer.Option(..., "--result", help="MLT result JSON, as written by mlt run"),
    target: Optional[Path] = typer.Option(None, "--target", help="end invariant JSON"),
    scenario: Optional[Path] = typer.Option(None, "--scenario", help="scenario JSON"),
    name: Optional[str] = typer.Option(None, "--name", help="invariant name inside the scenario"),
    out: Optional[Path] = typer.Option(None, "--out", "-o"),
):
    """Whether e(target) contains the intermediate union and lies in the extended union"""

    def produce() -> Outcome:
        stored = load_report_body(result, MltResultRecord)
        surface, record = load_invariant(ServiceFactory.get_scenario_service(), target, scenario, name)
        if stored.surface_id != surface.id:
            raise SurfaceMismatchError(f"result on {stored.surface_id}, target on {surface.id}")
        invariant = ServiceFactory.get_boundary_service().invariant_from_record(surface, record)
        service = ServiceFactory.get_mlt_service()
        verdict = service.sandwich_from_record(surface, stored, invariant)
        sandwich = service.sandwich_record(surface, invariant, verdict)
        table = fields_table(
            f"sandwich for {invariant.name()}",
            {"lower": verdict.lower_ok, "upper": verdict.upper_ok, "missing": sandwich.missing, "extra": sandwich.extra},
        )
        return Outcome(sandwich, table=table)

    execute(
        "mlt sandwich",
        {"result": result, "target": target, "scenario": scenario, "name": name, "out": out},
        produce,
        out,
    )
