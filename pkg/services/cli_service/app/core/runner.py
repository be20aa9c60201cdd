"""Runs one command: run id, report writing, exit codes."""
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import typer
from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

from services.cli_service.app.config import VERSION, environment
from services.cli_service.app.dto.cli import Meta, Report
from services.shared.bh_logging_lib.logger_factory import LoggerFactory
from services.shared.bh_utilities.errors import BersError
from services.shared.bh_utilities.output import to_json_text, write_atomic
from services.shared.run_context import RunContext

EXIT_VALIDATION = 2
EXIT_INCONCLUSIVE = 3

OUTPUT_OPTIONS = ("out", "report", "csv")

console = Console(stderr=True)


@dataclass
class Outcome:
    """What a command produced.

    `result` becomes the report body; `files` are extra outputs (CSV, DOT)
    keyed by path; `settings` are the effective tolerances and caps.
    """

    result: Any
    settings: Dict[str, Any] = field(default_factory=dict)
    files: Dict[Path, str] = field(default_factory=dict)
    table: Optional[Table] = None
    inconclusive: bool = False


def plain(value: Any) -> Any:
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    return value


def run_id_for(command: str, options: Dict[str, Any]) -> str:
    """Hash of the command, its options and the bytes of every input file it names; output paths are left out."""
    inputs = {k: v for k, v in options.items() if k not in OUTPUT_OPTIONS}
    digest = hashlib.sha256()
    digest.update(json.dumps({"command": command, "options": inputs}, sort_keys=True).encode("utf-8"))
    for value in inputs.values():
        if isinstance(value, str) and value.endswith(".json"):
            path = Path(value)
            if path.is_file():
                digest.update(path.read_bytes())
    return digest.hexdigest()[:12]


def execute(
    command: str,
    options: Dict[str, Any],
    produce: Callable[[], Outcome],
    out: Optional[Path] = None,
) -> None:
    """Run `produce` and emit its report; BersError and ValueError become exit codes."""
    options = {k: plain(v) for k, v in sorted(options.items())}
    run_id = run_id_for(command, options)
    RunContext.set_run_id(run_id)
    logger = LoggerFactory.create_logger_for("Cli")
    meta = Meta(command=command, run_id=run_id, version=VERSION, options=options)
    logger.info(f"{command} started")
    try:
        outcome = produce()
    except BersError as e:
        logger.error(f"{command} failed with {e.code}: {e.message}")
        typer.echo(to_json_text({"error": plain(e.to_dict()), "meta": meta.model_dump(mode="json")}), err=True, nl=False)
        raise typer.Exit(e.exit_code)
    except ValueError as e:
        logger.error(f"{command} rejected its input: {str(e)}")
        error = {"code": "invalid-input", "message": str(e), "details": {}}
        typer.echo(to_json_text({"error": error, "meta": meta.model_dump(mode="json")}), err=True, nl=False)
        raise typer.Exit(EXIT_VALIDATION)

    meta.settings = {**plain(outcome.settings), "environment": environment()}
    text = to_json_text(Report(meta=meta, result=plain(outcome.result)))
    if out is not None:
        write_atomic(out, text)
    else:
        typer.echo(text, nl=False)
    for path, content in sorted(outcome.files.items(), key=lambda item: str(item[0])):
        write_atomic(path, content)
    if outcome.table is not None:
        console.print(outcome.table)
    logger.info(f"{command} finished, inconclusive {outcome.inconclusive}")
    if outcome.inconclusive:
        raise typer.Exit(EXIT_INCONCLUSIVE)
