"""Reading input files into pydantic models, with failures located by JSON pointer."""
import json
from pathlib import Path
from typing import Any, Sequence, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from services.shared.bh_utilities.errors import SchemaViolationError
from services.shared.bh_utilities.output import to_json_text

M = TypeVar("M", bound=BaseModel)


def json_pointer(location: Sequence[Any]) -> str:
    """RFC 6901 pointer for a pydantic error location."""
    parts = [str(part).replace("~", "~0").replace("/", "~1") for part in location]
    return "/" + "/".join(parts) if parts else ""


def validate_payload(payload: Any, model: Type[M], source: str = "input", prefix: str = "") -> M:
    """Validate a decoded document; `prefix` is the pointer of the payload inside its file."""
    try:
        return model.model_validate(payload)
    except ValidationError as e:
        errors = [{"pointer": prefix + json_pointer(err["loc"]), "message": err["msg"]} for err in e.errors()]
        first = errors[0]
        raise SchemaViolationError(
            f"{source} does not match {model.__name__}: {first['message']} at {first['pointer'] or '/'}",
            pointer=first["pointer"],
            errors=errors,
        )


def read_json(path: Union[str, Path]) -> Any:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise SchemaViolationError(f"{path} not found", pointer="")
    except json.JSONDecodeError as e:
        raise SchemaViolationError(f"{path} is not JSON: {e.msg}", pointer="", line=e.lineno, column=e.colno)


def load_model(path: Union[str, Path], model: Type[M]) -> M:
    """Parse a JSON file and validate it against the model."""
    return validate_payload(read_json(path), model, str(path))


def load_report_body(path: Union[str, Path], model: Type[M]) -> M:
    """Like load_model, but a report written by the CLI is unwrapped to its result first."""
    payload = read_json(path)
    if isinstance(payload, dict) and "meta" in payload and "result" in payload:
        return validate_payload(payload["result"], model, str(path), prefix="/result")
    return validate_payload(payload, model, str(path))


def schema_text(model: Type[BaseModel]) -> str:
    return to_json_text(model.model_json_schema())
