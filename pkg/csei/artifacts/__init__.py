"""Stage artifacts: CSV tables and JSON documents in the output directory."""

from csei.artifacts import tables
from csei.artifacts.tables import (
    read_clean_posts,
    read_frame,
    read_index,
    read_json,
    read_matrix,
    write_clean_posts,
    write_correlation_matrix,
    write_event_stats,
    write_extrema,
    write_frame,
    write_gaps,
    write_index,
    write_json,
    write_matrix,
    write_outliers,
    write_scored_posts,
    write_series,
    write_shares,
    write_weights,
)

__all__ = [
    "read_clean_posts",
    "read_frame",
    "read_index",
    "read_json",
    "read_matrix",
    "tables",
    "write_clean_posts",
    "write_correlation_matrix",
    "write_event_stats",
    "write_extrema",
    "write_frame",
    "write_gaps",
    "write_index",
    "write_json",
    "write_matrix",
    "write_outliers",
    "write_scored_posts",
    "write_series",
    "write_shares",
    "write_weights",
]
