"""
Custom exceptions for the CSEI pipeline.

This module defines the exception hierarchy used throughout the application.
Every error can be rendered as a machine-readable record for the CLI.
"""

from pathlib import Path
from typing import Any, Optional


class CSEIError(Exception):
    """Base exception for all pipeline errors."""

    def __init__(self, message: str, *, stage: Optional[str] = None):
        """
        Initialize error.

        Args:
            message: Error message
            stage: Pipeline stage that raised the error, if known
        """
        super().__init__(message)
        self.message = message
        self.stage = stage

    def to_record(self) -> dict[str, Any]:
        """
        Build a machine-readable error record.

        Returns:
            Dictionary with error class, message and any context fields
        """
        record: dict[str, Any] = {"error": type(self).__name__, "message": self.message}
        if self.stage:
            record["stage"] = self.stage
        return record


class ConfigurationError(CSEIError):
    """Configuration is invalid or missing."""

    pass


class InputFileError(ConfigurationError):
    """A configured input file does not exist or cannot be opened."""

    def __init__(self, message: str, path: Path, *, stage: Optional[str] = None):
        super().__init__(message, stage=stage)
        self.path = Path(path)

    def to_record(self) -> dict[str, Any]:
        record = super().to_record()
        record["path"] = str(self.path)
        return record


class IngestionError(CSEIError):
    """Post source could not be read or decoded."""

    pass


class SchemaError(CSEIError):
    """A required column or feature is missing from an input table."""

    def __init__(self, message: str, missing: Optional[list[str]] = None, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.missing = missing or []

    def to_record(self) -> dict[str, Any]:
        record = super().to_record()
        if self.missing:
            record["missing"] = list(self.missing)
        return record


class ScoringDataError(CSEIError):
    """External score table holds invalid values for a post."""

    def __init__(self, message: str, post_id: str, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.post_id = post_id

    def to_record(self) -> dict[str, Any]:
        record = super().to_record()
        record["post_id"] = self.post_id
        return record


class DegenerateDataError(CSEIError):
    """Data has no usable variation for the requested computation."""

    pass


class DegenerateCorrelationError(DegenerateDataError):
    """Correlation requested on a constant vector."""

    pass


class DimensionMismatchError(CSEIError):
    """Array shapes disagree (columns vs weights, fit vs score)."""

    pass


class FitError(CSEIError):
    """Model fitting failed (too few rows, invalid parameters)."""

    pass


class SeriesTooShortError(CSEIError):
    """Series is shorter than an operation's window requires."""

    pass


class OutputLockedError(CSEIError):
    """Another run holds the output directory lock."""

    def __init__(self, message: str, path: Path, **kwargs: Any):
        super().__init__(message, **kwargs)
        self.path = Path(path)

    def to_record(self) -> dict[str, Any]:
        record = super().to_record()
        record["path"] = str(self.path)
        return record


class StageError(CSEIError):
    """A pipeline stage failed; wraps the underlying error with attribution."""

    def __init__(self, stage: str, cause: Exception):
        """
        Initialize stage error.

        Args:
            stage: Name of the failing stage (ingest, build, analyze)
            cause: Original exception
        """
        super().__init__(f"{stage} stage failed: {cause}", stage=stage)
        self.cause = cause

    def to_record(self) -> dict[str, Any]:
        if isinstance(self.cause, CSEIError):
            record = self.cause.to_record()
        else:
            record = {"error": type(self.cause).__name__, "message": str(self.cause)}
        record["stage"] = self.stage
        return record


def exit_code_for(error: BaseException) -> int:
    """
    Map an exception to the CLI exit code.

    Args:
        error: Raised exception

    Returns:
        2 for usage/config errors, 1 for stage errors
    """
    if isinstance(error, StageError):
        error = error.cause
    if isinstance(error, ConfigurationError):
        return 2
    return 1
