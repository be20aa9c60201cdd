"""Deterministic writers for JSON, CSV and DOT outputs."""
import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence, Union

from pydantic import BaseModel


def to_json_text(payload: Union[BaseModel, dict, list]) -> str:
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def to_csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(value) if isinstance(value, float) else value for value in row])
    return buffer.getvalue()


def write_atomic(path: Union[str, Path], text: str) -> None:
    """Write text to path through a temporary file in the same directory."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except Exception:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
