"""Utility functions and classes for the CSEI pipeline."""

from csei.utils.errors import (
    ConfigurationError,
    CSEIError,
    DegenerateCorrelationError,
    DegenerateDataError,
    DimensionMismatchError,
    FitError,
    IngestionError,
    InputFileError,
    OutputLockedError,
    SchemaError,
    ScoringDataError,
    SeriesTooShortError,
    StageError,
    exit_code_for,
)
from csei.utils.helpers import (
    bundled_path,
    format_float,
    parse_iso_date,
    resolve_input,
    utc_date,
)
from csei.utils.logger import current_stage, get_logger, log_stage, setup_logger, stage_context

__all__ = [
    # Errors
    "ConfigurationError",
    "CSEIError",
    "DegenerateCorrelationError",
    "DegenerateDataError",
    "DimensionMismatchError",
    "FitError",
    "IngestionError",
    "InputFileError",
    "OutputLockedError",
    "SchemaError",
    "ScoringDataError",
    "SeriesTooShortError",
    "StageError",
    "exit_code_for",
    # Logging
    "current_stage",
    "get_logger",
    "log_stage",
    "setup_logger",
    "stage_context",
    # Helpers
    "bundled_path",
    "format_float",
    "parse_iso_date",
    "resolve_input",
    "utc_date",
]
