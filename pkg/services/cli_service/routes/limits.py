from pathlib import Path
from typing import List, Optional

import typer

from services.cli_service.app.core.inputs import limit_settings, load_sequence, parse_curve, sequence_universe
from services.cli_service.app.core.runner import Outcome, execute
from services.cli_service.app.core.tables import fields_table, rows_table
from services.cli_service.app.di.containers import ServiceFactory
from services.cli_service.app.dto.cli import LengthTraceRecord
from services.limits_service.app.models.sequence import Verdict
from services.shared.bh_utilities.errors import SchemaViolationError
from services.shared.bh_utilities.output import to_csv_text

length_app = typer.Typer(help="Geodesic lengths along a sequence of structures", no_args_is_help=True)
limits_app = typer.Typer(help="Thurston limits of sequences", no_args_is_help=True)


@length_app.command("trace")
def length_trace(
    curves: List[str] = typer.Option([], "--curve", "-c", help="curve name or comma separated weights; repeatable"),
    seq: Optional[Path] = typer.Option(None, "--seq", help="sequence JSON"),
    scenario: Optional[Path] = typer.Option(None, "--scenario", help="scenario JSON"),
    sequence: Optional[str] = typer.Option(None, "--sequence", help="sequence name inside the scenario"),
    i_max: Optional[int] = typer.Option(None, "--imax", min=1),
    dart_budget: Optional[int] = typer.Option(None, "--dart-budget", min=1),
    csv: Optional[Path] = typer.Option(None, "--csv", help="write (i, curve_id, length) rows here"),
    out: Optional[Path] = typer.Option(None, "--out", "-o"),
):
    """Lengths of the given curves at m_0, ..., m_imax"""

    def produce() -> Outcome:
        given = load_sequence(ServiceFactory.get_scenario_service(), seq, scenario, sequence)
        if not curves:
            raise SchemaViolationError("at least one --curve is required", option="--curve")
        surface, spec = given.surface, given.spec
        settings = limit_settings(
            ServiceFactory.get_settings().limits, i_max=i_max or spec.i_max, dart_budget=dart_budget
        )
        service = ServiceFactory.get_limit_service(settings)
        curve_service = ServiceFactory.get_curve_service()
        watched = [parse_curve(curve_service, surface, text, given.scenario) for text in curves]
        rows = service.length_trace(surface, service.sequence_from_spec(surface, spec), watched)
        record = LengthTraceRecord(
            surface_id=surface.id, sequence=spec.name, curves=[c.key() for c in watched], rows=rows
        )
        files = {}
        if csv is not None:
            files[csv] = to_csv_text(["i", "curve_id", "length"], [(r.i, r.curve_id, r.length) for r in rows])
        table = rows_table(f"lengths along {spec.name}", ["i", "curve", "length"], [(r.i, r.curve_id, r.length) for r in rows])
        return Outcome(record, settings={"limits": settings}, files=files, table=table)

    execute(
        "length trace",
        {
            "curve": curves,
            "seq": seq,
            "scenario": scenario,
            "sequence": sequence,
            "imax": i_max,
            "dart_budget": dart_budget,
            "csv": csv,
            "out": out,
        },
        produce,
        out,
    )


@limits_app.command("run")
def limits_run(
    seq: Optional[Path] = typer.Option(None, "--seq", help="sequence JSON"),
    scenario: Optional[Path] = typer.Option(None, "--scenario", help="scenario JSON"),
    sequence: Optional[str] = typer.Option(None, "--sequence", help="sequence name inside the scenario"),
    budget: Optional[int] = typer.Option(None, "--budget", min=1, help="number of candidate curves"),
    i_max: Optional[int] = typer.Option(None, "--imax", min=2),
    tol: Optional[float] = typer.Option(None, "--tol", min=0.0, help="projective tolerance"),
    dart_budget: Optional[int] = typer.Option(None, "--dart-budget", min=1),
    universe: str = typer.Option("enumerated", "--universe", help="enumerated or round"),
    csv: Optional[Path] = typer.Option(None, "--csv", help="write normalized vectors (i, key, value) here"),
    out: Optional[Path] = typer.Option(None, "--out", "-o"),
):
    """Bounded, converging to a measured lamination, or inconclusive (exit 3)"""

    def produce() -> Outcome:
        given = load_sequence(ServiceFactory.get_scenario_service(), seq, scenario, sequence)
        surface, spec = given.surface, given.spec
        settings = limit_settings(
            ServiceFactory.get_settings().limits, i_max=i_max or spec.i_max, tolerance=tol, dart_budget=dart_budget
        )
        service = ServiceFactory.get_limit_service(settings)
        watched = sequence_universe(ServiceFactory.get_curve_service(), surface, spec, universe)
        teich_sequence = service.sequence_from_spec(surface, spec)
        candidates = service.candidate_curves(surface, watched, None, budget or spec.candidate_budget)
        laminations = service.factor_laminations(surface, teich_sequence, watched)
        report = service.thurston_limit(surface, teich_sequence, candidates, laminations)
        record = service.report_record(surface, report)
        files = {}
        if csv is not None:
            files[csv] = to_csv_text(["i", "key", "value"], [(r.i, r.key, r.value) for r in service.vector_rows(report)])
        table = fields_table(
            f"{spec.name} on {surface.id}",
            {
                "verdict": record.verdict,
                "subsequence": record.subsequence,
                "residual": f"{record.residual:.3e}",
                "limit": ", ".join(leaf.key for leaf in record.limit.components) if record.limit else "-",
                "note": record.note,
            },
        )
        return Outcome(
            record,
            settings={"limits": settings, "candidate_budget": budget or spec.candidate_budget, "universe": universe},
            files=files,
            table=table,
            inconclusive=report.verdict == Verdict.INCONCLUSIVE,
        )

    execute(
        "limits run",
        {
            "seq": seq,
            "scenario": scenario,
            "sequence": sequence,
            "budget": budget,
            "imax": i_max,
            "tol": tol,
            "dart_budget": dart_budget,
            "universe": universe,
            "csv": csv,
            "out": out,
        },
        produce,
        out,
    )
