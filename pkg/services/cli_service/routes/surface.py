from pathlib import Path
from typing import Optional

import typer

from services.cli_service.app.core.runner import Outcome, execute
from services.cli_service.app.core.tables import fields_table, rows_table
from services.cli_service.app.di.containers import ServiceFactory
from services.cli_service.app.dto.cli import SurfaceReport

surface_app = typer.Typer(help="Surfaces and their ideal triangulations", no_args_is_help=True)
curves_app = typer.Typer(help="Essential simple closed curves", no_args_is_help=True)


@surface_app.command("info")
def surface_info(
    genus: int = typer.Option(..., "--genus", "-g", min=0),
    punctures: int = typer.Option(..., "--punctures", "-p", min=0),
    triangulation: bool = typer.Option(False, "--triangulation", help="include the glued triangles"),
    out: Optional[Path] = typer.Option(None, "--out", "-o"),
):
    """Complexity, Teichmueller dimension and triangulation size of S(g,p)"""

    def produce() -> Outcome:
        service = ServiceFactory.get_surface_service()
        surface = service.make_surface(genus, punctures)
        info = service.describe(surface)
        report = SurfaceReport(
            info=info, triangulation=service.export_triangulation(surface) if triangulation else None
        )
        return Outcome(report, table=fields_table(surface.id, info.model_dump()))

    execute(
        "surface info",
        {"genus": genus, "punctures": punctures, "triangulation": triangulation, "out": out},
        produce,
        out,
    )


@curves_app.command("enumerate")
def curves_enumerate(
    genus: int = typer.Option(..., "--genus", "-g", min=0),
    punctures: int = typer.Option(..., "--punctures", "-p", min=0),
    max_weight: int = typer.Option(2, "--max-weight", "-w", min=1, help="largest normal coordinate on any edge"),
    out: Optional[Path] = typer.Option(None, "--out", "-o"),
):
    """Every curve up to isotopy whose normal coordinates are all at most --max-weight"""

    def produce() -> Outcome:
        surface = ServiceFactory.get_surface_service().make_surface(genus, punctures)
        listing = ServiceFactory.get_curve_service().listing(surface, max_weight)
        table = rows_table(
            f"{len(listing.curves)} curves on {surface.id}",
            ["weights", "total"],
            [(c.weights, sum(c.weights)) for c in listing.curves],
        )
        return Outcome(listing, table=table)

    execute(
        "curves enumerate",
        {"genus": genus, "punctures": punctures, "max_weight": max_weight, "out": out},
        produce,
        out,
    )
