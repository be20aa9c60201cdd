"""Error types shared by every bers-horizon service.

All errors derive from ValueError so callers written against the plain
ValueError contract keep working. `exit_code` drives the CLI: 2 for invalid
input, 3 for computations that could not reach a verdict.
"""


class BersError(ValueError):
    code = "bers-error"
    exit_code = 2

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "details": self.details}


class ComplexityTooLowError(BersError):
    code = "complexity-too-low"


class ClosedSurfaceUnsupportedError(BersError):
    code = "closed-surface-unsupported"


class MatchingViolationError(BersError):
    code = "matching-violation"


class NotConnectedError(BersError):
    code = "not-connected"


class PeripheralError(BersError):
    code = "peripheral"


class EmptyCurveError(BersError):
    code = "empty-curve"


class SurfaceMismatchError(BersError):
    code = "surface-mismatch"


class OverlapError(BersError):
    code = "overlap"


class ClosedCurveInputError(BersError):
    code = "closed-curve-input"


class NonCompleteStructureError(BersError):
    code = "non-complete-structure"


class DegenerateStructureError(BersError):
    code = "degenerate-structure"


class ReducibleOrPeriodicError(BersError):
    code = "reducible-or-periodic"


class SpanningFailureError(BersError):
    code = "spanning-failure"


class EmptyPieceError(BersError):
    code = "empty-piece"


class NotUml0Error(BersError):
    code = "not-uml0"


class GeneratorMismatchError(BersError):
    code = "generator-mismatch"


class DimensionTooLowError(BersError):
    code = "dimension-too-low"


class EnumerationBudgetExceededError(BersError):
    code = "enumeration-budget-exceeded"


class SchemaViolationError(BersError):
    code = "schema-violation"


class InconclusiveError(BersError):
    code = "inconclusive"
    exit_code = 3


class InconclusiveLayerError(InconclusiveError):
    code = "inconclusive-layer"


class FlipSequenceError(BersError):
    code = "flip-sequence"


class UnsupportedMappingClassError(InconclusiveError):
    code = "unsupported-mapping-class"
