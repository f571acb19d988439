from dataclasses import dataclass
from typing import List, Optional


class ToolkitError(Exception):
    error_code = "internal"
    exit_code = 2
    status_code = 500

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail = detail


class UsageError(ToolkitError):
    error_code = "usage"
    exit_code = 1
    status_code = 400


class ConfigError(ToolkitError):
    error_code = "config"
    exit_code = 1
    status_code = 400


class GateViolation(ToolkitError):
    error_code = "gate_violation"
    exit_code = 3
    status_code = 409


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class CodeSyntaxError(ToolkitError):
    error_code = "syntax_error"
    exit_code = 1
    status_code = 422

    def __init__(self, diagnostics: List[Diagnostic]) -> None:
        detail = str(diagnostics[0]) if diagnostics else "syntax error"
        super().__init__(detail)
        self.diagnostics = diagnostics


class EditError(ToolkitError):
    error_code = "edit_error"
    status_code = 422


class OverlapError(EditError):
    error_code = "edit_overlap"


class OutOfBoundsError(EditError):
    error_code = "edit_out_of_bounds"


class InapplicableSite(ToolkitError):
    error_code = "inapplicable_site"
    status_code = 409


class ToolchainMissing(ToolkitError):
    error_code = "toolchain_missing"
    status_code = 503


class SandboxSetupFailure(ToolkitError):
    error_code = "sandbox_setup"


class TranslatorTimeout(ToolkitError):
    error_code = "translator_timeout"
    status_code = 504


class TransportError(ToolkitError):
    error_code = "transport_error"
    status_code = 502


class EmptyTranslation(ToolkitError):
    error_code = "empty_translation"
    status_code = 502


class DimensionMismatch(ToolkitError):
    error_code = "dimension_mismatch"
    status_code = 422


class ZeroVector(ToolkitError):
    error_code = "zero_vector"
    status_code = 422


class EmptyTokenStream(ZeroVector):
    error_code = "empty_token_stream"


class EmptyInput(ToolkitError):
    error_code = "empty_input"
    exit_code = 1
    status_code = 422


class UndefinedForZeroPass(ToolkitError):
    error_code = "undefined_for_zero_pass"
    status_code = 422


class EmptyReference(ToolkitError):
    error_code = "empty_reference"
    status_code = 422


def describe(error: ToolkitError, context: Optional[str] = None) -> str:
    prefix = f"{context}: " if context else ""
    return f"error_code: {error.error_code} {prefix}{error.detail}"
