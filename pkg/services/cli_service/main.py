"""Main entry point for the bers-horizon command line"""
from pathlib import Path

import typer

from services.cli_service.app.core.runner import Outcome, execute
from services.cli_service.app.core.schemas import SCHEMA_DIR, SCHEMAS, schema_path
from services.cli_service.routes.boundary import adherence_app, simplex_app
from services.cli_service.routes.demo import demo_app
from services.cli_service.routes.limits import length_app, limits_app
from services.cli_service.routes.mlt import mlt_app
from services.cli_service.routes.surface import curves_app, surface_app
from services.shared.bh_utilities.schema import schema_text

app = typer.Typer(
    name="bers-horizon",
    help="End invariants, adherence and multi-layered Thurston limits on punctured surfaces.",
    no_args_is_help=True,
    add_completion=False,
)

app.add_typer(surface_app, name="surface")
app.add_typer(curves_app, name="curves")
app.add_typer(length_app, name="length")
app.add_typer(limits_app, name="limits")
app.add_typer(mlt_app, name="mlt")
app.add_typer(adherence_app, name="adherence")
app.add_typer(simplex_app, name="simplex")
app.add_typer(demo_app, name="demo")


@app.command("schemas")
def schemas(out_dir: Path = typer.Option(SCHEMA_DIR, "--out-dir", help="where to write <name>.schema.json")):
    """Write the JSON Schema of every input and output format"""

    def produce() -> Outcome:
        files = {schema_path(name, out_dir): schema_text(model) for name, model in SCHEMAS.items()}
        return Outcome({"written": sorted(str(path.name) for path in files)}, files=files)

    execute("schemas", {"out_dir": out_dir}, produce)


def main():
    app()


if __name__ == "__main__":
    main()
