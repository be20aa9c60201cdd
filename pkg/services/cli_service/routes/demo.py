from pathlib import Path
from typing import Dict, List, Optional

import typer

from services.cli_service.app.core.inputs import limit_settings, sequence_universe
from services.cli_service.app.core.runner import Outcome, execute
from services.cli_service.app.core.tables import fields_table, rows_table
from services.cli_service.app.di.containers import ServiceFactory
from services.cli_service.app.dto.cli import DemoRemarkRecord
from services.mlt_service.app.dto.mlt import MltResultRecord, SandwichRecord
from services.shared.bh_utilities.errors import SchemaViolationError

demo_app = typer.Typer(help="Shipped worked examples", no_args_is_help=True)


@demo_app.command("remark")
def demo_remark(
    scenario: Optional[Path] = typer.Option(None, "--scenario", help="defaults to the shipped remark scenario"),
    out: Optional[Path] = typer.Option(None, "--out", "-o"),
):
    """Nested partial pseudo-Anosov classes on S(0,7): two sequences, one multi-layered limit; exit 3 if not reproduced"""

    def produce() -> Outcome:
        scenarios = ServiceFactory.get_scenario_service()
        resolved = scenarios.load(scenario) if scenario is not None else scenarios.shipped("remark")
        surface = resolved.surface
        if len(resolved.sequences) < 2 or len(resolved.invariants) < 2:
            raise SchemaViolationError("the remark needs at least two sequences and two invariants", pointer="/sequences")
        demo = ServiceFactory.get_settings().demo
        curve_service = ServiceFactory.get_curve_service()

        results = {}
        records: Dict[str, MltResultRecord] = {}
        for name, spec in sorted(resolved.sequences.items()):
            service = ServiceFactory.get_mlt_service(limit_settings(demo, i_max=spec.i_max))
            universe = sequence_universe(curve_service, surface, spec, "round")
            teich_sequence = service.limit_service.sequence_from_spec(surface, spec)
            results[name] = service.multi_layered_limit(surface, teich_sequence, universe, spec.candidate_budget)
            records[name] = service.result_record(surface, results[name])

        mlt = ServiceFactory.get_mlt_service(demo)
        first = next(iter(records.values()))
        differences = [d for record in records.values() for d in mlt.result_differences(first, record)]
        same_result = not differences
        intermediate = {leaf.key for leaf in first.intermediate}
        added = sorted(leaf.key for leaf in first.extended if leaf.key not in intermediate)

        boundary = ServiceFactory.get_boundary_service()
        points = {
            name: boundary.invariant_from_record(surface, record) for name, record in sorted(resolved.invariants.items())
        }
        parabolic_keys = [{"curve:" + c.key() for c in point.parabolics} for point in points.values()]
        pants_curves = sorted(set.union(*parabolic_keys) - set.intersection(*parabolic_keys))

        sandwiches: List[SandwichRecord] = []
        for seq_name, result in results.items():
            for point_name, point in points.items():
                verdict = mlt.sandwich_check(surface, result, point)
                record = mlt.sandwich_record(surface, point, verdict)
                sandwiches.append(record.model_copy(update={"label": f"{seq_name}: {point_name}"}))

        reproduced = same_result and added == pants_curves and all(s.lower_ok and s.upper_ok for s in sandwiches)
        note = None
        if not reproduced:
            note = f"differences {differences}, extended minus intermediate {added}, expected {pants_curves}"
        remark = DemoRemarkRecord(
            surface_id=surface.id,
            sequences=records,
            same_result=same_result,
            pants_curves=pants_curves,
            extended_minus_intermediate=added,
            sandwiches=sandwiches,
            reproduced=reproduced,
            note=note,
        )
        table = rows_table(
            f"remark on {surface.id}: reproduced {reproduced}",
            ["sandwich", "lower", "upper"],
            [(s.label, s.lower_ok, s.upper_ok) for s in sandwiches],
        )
        return Outcome(remark, settings={"demo": demo, "universe": "round"}, table=table, inconclusive=not reproduced)

    execute("demo remark", {"scenario": scenario, "out": out}, produce, out)


@demo_app.command("topology-mismatch")
def demo_topology_mismatch(
    scenario: Optional[Path] = typer.Option(None, "--scenario", help="scenario naming curves c and d"),
    genus: Optional[int] = typer.Option(None, "--genus", "-g", min=0, help="use the first disjoint pair instead"),
    punctures: Optional[int] = typer.Option(None, "--punctures", "-p", min=0),
    terms: Optional[int] = typer.Option(None, "--terms", min=2),
    out: Optional[Path] = typer.Option(None, "--out", "-o"),
):
    """Certificates that c + d/n -> c in UML0 while the boundary point of c + d stays put; exit 3 if a check fails"""

    def produce() -> Outcome:
        if (genus is None) != (punctures is None):
            raise SchemaViolationError("give both --genus and --punctures", option="--genus")
        if genus is not None:
            surface = ServiceFactory.get_surface_service().make_surface(genus, punctures)
            universe = ServiceFactory.get_enumeration_service().universe(surface)
            i, j = min(universe.disjoint) if universe.disjoint else (0, 1)
            c, d = universe.curves[i], universe.curves[j]
        else:
            scenarios = ServiceFactory.get_scenario_service()
            resolved = scenarios.load(scenario) if scenario is not None else scenarios.shipped("topology_mismatch")
            surface = resolved.surface
            missing = [name for name in ("c", "d") if name not in resolved.curves]
            if missing:
                raise SchemaViolationError(f"scenario defines no curve {missing[0]!r}", pointer="/curves")
            c, d = resolved.curves["c"], resolved.curves["d"]
        service = ServiceFactory.get_boundary_service()
        certificate = service.certificate_record(service.topology_mismatch_certificates(surface, c, d, terms))
        table = fields_table(f"topology mismatch on {surface.id}", certificate.checks)
        return Outcome(
            certificate,
            settings={"boundary": ServiceFactory.get_settings().boundary},
            table=table,
            inconclusive=not certificate.passed,
        )

    execute(
        "demo topology-mismatch",
        {"scenario": scenario, "genus": genus, "punctures": punctures, "terms": terms, "out": out},
        produce,
        out,
    )
