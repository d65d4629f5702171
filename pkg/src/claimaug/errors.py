"""Exception types shared across the package."""

from __future__ import annotations


class ClaimaugError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ClaimaugError):
    """A file could not be parsed. Carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SchemaError(ClaimaugError):
    """A label or label schema is inconsistent with the declared inventory."""


class ValidationError(ClaimaugError):
    """A data invariant or operation precondition was violated."""


class ConfigurationError(ClaimaugError):
    """A configuration value or resource wiring is invalid."""


class AugmentationError(ClaimaugError):
    """No augmentations could be produced. Carries a reason histogram."""

    def __init__(self, message: str, reasons: dict[str, int] | None = None):
        self.reasons = dict(reasons or {})
        if self.reasons:
            hist = ", ".join(f"{k}={v}" for k, v in sorted(self.reasons.items()))
            message = f"{message} ({hist})"
        super().__init__(message)


class AugmentationFailed(ClaimaugError):
    """A single augmentation attempt produced nothing usable."""


class LlmTransportError(ClaimaugError):
    """The LLM endpoint could not be reached or timed out; retriable."""


class TrainingDiverged(ClaimaugError):
    """Training loss became non-finite."""
