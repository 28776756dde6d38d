"""
Helper functions for the CSEI pipeline.

This module contains utility functions used throughout the application.
"""

from datetime import date, datetime, timezone
from pathlib import Path
from typing import Optional

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def bundled_path(name: str) -> Path:
    """
    Resolve a file shipped in the package data directory.

    Args:
        name: File name inside csei/data

    Returns:
        Absolute path to the bundled file
    """
    return DATA_DIR / name


def resolve_input(path: Optional[Path], bundled: str) -> Path:
    """
    Return the configured path, or the bundled default when unset.

    Args:
        path: User-configured path (may be None)
        bundled: Bundled file name to fall back to

    Returns:
        Path to read
    """
    return Path(path) if path is not None else bundled_path(bundled)


def utc_date(timestamp: float) -> date:
    """
    Convert a UNIX timestamp (seconds) to its UTC calendar date.

    Args:
        timestamp: Seconds since the epoch

    Returns:
        Calendar date in UTC

    Raises:
        ValueError: If the timestamp is out of range
    """
    return datetime.fromtimestamp(timestamp, tz=timezone.utc).date()


def parse_iso_date(value: str) -> date:
    """
    Parse an ISO-8601 calendar date (YYYY-MM-DD).

    Args:
        value: Date string

    Returns:
        Parsed date
    """
    return date.fromisoformat(value.strip())


def format_float(value: Optional[float], digits: int = 4) -> str:
    """
    Format a possibly-undefined float for reports.

    Args:
        value: Number or None/NaN
        digits: Decimal places

    Returns:
        Formatted string, "n/a" when undefined
    """
    if value is None or value != value:
        return "n/a"
    return f"{value:.{digits}f}"
