"""Structured lab errors with error codes."""


class LabError(Exception):
    """Lab error with machine-readable code, HTTP status and CLI exit code."""

    def __init__(self, code: str, status_code: int, detail: str) -> None:
        super().__init__(detail)
        self.code = code
        self.status_code = status_code
        self.detail = detail

    @property
    def exit_code(self) -> int:
        return exit_code_for(self.code)


# Error code constants
VALIDATION_ERROR = "VALIDATION_ERROR"
SPEC_PARSE_ERROR = "SPEC_PARSE_ERROR"
PRECONDITION_FAILED = "PRECONDITION_FAILED"
UNBOUNDED_SYMBOL = "UNBOUNDED_SYMBOL"
NOT_CONVERGED = "NOT_CONVERGED"
MATRIX_TOO_LARGE = "MATRIX_TOO_LARGE"
DEGENERATE_SYSTEM = "DEGENERATE_SYSTEM"
TOLERANCE_UNREACHABLE = "TOLERANCE_UNREACHABLE"
INSUFFICIENT_SAMPLES = "INSUFFICIENT_SAMPLES"
INCONSISTENT_RESULT = "INCONSISTENT_RESULT"

# 0, 1, 2 belong to verdicts (bounded / unbounded / undecidable)
_EXIT_CODES: dict[str, int] = {
    VALIDATION_ERROR: 3,
    SPEC_PARSE_ERROR: 4,
    PRECONDITION_FAILED: 5,
    UNBOUNDED_SYMBOL: 6,
    NOT_CONVERGED: 7,
    MATRIX_TOO_LARGE: 8,
    DEGENERATE_SYSTEM: 9,
    TOLERANCE_UNREACHABLE: 10,
    INSUFFICIENT_SAMPLES: 11,
    INCONSISTENT_RESULT: 12,
}

UNKNOWN_ERROR_EXIT = 64


def exit_code_for(code: str) -> int:
    """CLI exit code for an error code (always > 2)."""
    return _EXIT_CODES.get(code, UNKNOWN_ERROR_EXIT)


def precondition(detail: str) -> LabError:
    return LabError(PRECONDITION_FAILED, 422, detail)
