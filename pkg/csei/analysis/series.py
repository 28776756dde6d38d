"""
Series transforms over the daily index: deltas, smoothing, cumulative change.
"""

from datetime import date
from typing import Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..models import DatedSeries
from ..utils import SeriesTooShortError, get_logger

logger = get_logger(__name__)


def daily_delta(series: DatedSeries) -> DatedSeries:
    """
    First-order difference over consecutive retained rows.

    The delta at position t is the change ending on dates[t], so the
    result is dated by the later day of each pair.

    Args:
        series: Index (or any dated) series

    Returns:
        Delta series of length n - 1

    Raises:
        SeriesTooShortError: If the series has fewer than 2 values
    """
    if len(series) < 2:
        raise SeriesTooShortError(f"daily delta needs at least 2 values, got {len(series)}")
    return DatedSeries(dates=list(series.dates[1:]), values=np.diff(series.values))


def rolling_mean(delta: DatedSeries, window: int) -> DatedSeries:
    """
    Trailing mean over full windows of width w; partial windows are dropped.

    Args:
        delta: Input series
        window: Window width (>= 1)

    Returns:
        Series of length n - w + 1 dated by each window's last day

    Raises:
        SeriesTooShortError: If the input is shorter than the window
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    if len(delta) < window:
        raise SeriesTooShortError(
            f"rolling window {window} is longer than the series ({len(delta)} values)"
        )
    means = sliding_window_view(delta.values, window).mean(axis=1)
    return DatedSeries(dates=list(delta.dates[window - 1 :]), values=means)


def cumulative_change(delta: DatedSeries) -> DatedSeries:
    """Prefix sums of the delta series."""
    return DatedSeries(dates=list(delta.dates), values=np.cumsum(delta.values))


def date_gaps(dates: Sequence[date]) -> list[tuple[date, date, int]]:
    """
    List breaks in day-contiguity between consecutive retained dates.

    Args:
        dates: Sorted dates

    Returns:
        (previous date, next date, gap in days) for every gap > 1 day
    """
    gaps = []
    for before, after in zip(dates, dates[1:]):
        days = (after - before).days
        if days > 1:
            gaps.append((before, after, days))
    if gaps:
        logger.warning(f"{len(gaps)} date gap(s) > 1 day in the index series")
    return gaps
