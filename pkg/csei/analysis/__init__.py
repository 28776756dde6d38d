"""Event-response analytics over the daily index."""

from csei.analysis.events import (
    correlate_series,
    event_day_comparison,
    event_indicator,
    load_calendar,
)
from csei.analysis.extrema import (
    default_prominence,
    detect_extrema,
    find_peaks,
    find_valleys,
)
from csei.analysis.series import cumulative_change, daily_delta, date_gaps, rolling_mean
from csei.analysis.stats import correlation_matrix, pearson, regularized_incomplete_beta

__all__ = [
    "correlate_series",
    "correlation_matrix",
    "cumulative_change",
    "daily_delta",
    "date_gaps",
    "default_prominence",
    "detect_extrema",
    "event_day_comparison",
    "event_indicator",
    "find_peaks",
    "find_valleys",
    "load_calendar",
    "pearson",
    "regularized_incomplete_beta",
    "rolling_mean",
]
