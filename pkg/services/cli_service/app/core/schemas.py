"""File formats documented by JSON Schema under services/config/schemas."""
from pathlib import Path

from services.boundary_service.app.dto.boundary import (
    ApproximationRecord,
    CertificateRecord,
    EndInvariantRecord,
    HeightRecord,
    SimplexRecord,
    TowersRecord,
)
from services.cli_service.app.dto.cli import (
    DemoRemarkRecord,
    LengthTraceRecord,
    PosetRecord,
    Report,
    SurfaceReport,
)
from services.cli_service.app.dto.scenario import ScenarioFile
from services.limits_service.app.dto.limits import LimitReportRecord, SequenceSpec
from services.metrics_service.app.dto.metrics import MappingClassRecord, MetricRecord
from services.mlt_service.app.dto.mlt import MltResultRecord, SandwichRecord
from services.surface_service.app.dto.surface import CurveListing

SCHEMA_DIR = Path(__file__).parent.parent.parent.parent / "config" / "schemas"

# inputs first, then command results, then the envelope every report shares
SCHEMAS = {
    "scenario": ScenarioFile,
    "sequence": SequenceSpec,
    "end_invariant": EndInvariantRecord,
    "mapping_class": MappingClassRecord,
    "metric": MetricRecord,
    "surface": SurfaceReport,
    "curve_listing": CurveListing,
    "length_trace": LengthTraceRecord,
    "limit_report": LimitReportRecord,
    "mlt_result": MltResultRecord,
    "sandwich": SandwichRecord,
    "height": HeightRecord,
    "towers": TowersRecord,
    "poset": PosetRecord,
    "approximation": ApproximationRecord,
    "simplex": SimplexRecord,
    "certificate": CertificateRecord,
    "demo_remark": DemoRemarkRecord,
    "report": Report,
}


def schema_path(name: str, directory: Path = SCHEMA_DIR) -> Path:
    return directory / f"{name}.schema.json"
