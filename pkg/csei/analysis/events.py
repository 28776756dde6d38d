"""
Event calendar, event indicator and event-day comparison.
"""

from datetime import date
from pathlib import Path
from typing import Literal, Optional, Sequence

import numpy as np
import pandas as pd

from ..models import DatedSeries, Event, EventCalendar, EventComparison, EventIndicator
from ..utils import (
    DimensionMismatchError,
    InputFileError,
    SchemaError,
    get_logger,
    parse_iso_date,
    resolve_input,
)

logger = get_logger(__name__)

EVENTS_FILE = "events.csv"
CALENDAR_COLUMNS: tuple[str, ...] = ("date", "label")

Correlate = Literal["delta", "abs_delta", "smoothed"]


def load_calendar(path: Optional[Path] = None) -> EventCalendar:
    """
    Load a `date,label` event calendar (bundled calendar when None).

    Text from `#` to the end of a line is a comment.

    Args:
        path: Calendar CSV

    Returns:
        EventCalendar sorted by date

    Raises:
        InputFileError: If the file does not exist
        SchemaError: On missing columns, bad dates or repeated dates
    """
    path = resolve_input(path, EVENTS_FILE)
    if not path.is_file():
        raise InputFileError(f"Event calendar not found: {path}", path=path)

    frame = pd.read_csv(path, dtype=str, keep_default_na=False, comment="#")
    missing = [c for c in CALENDAR_COLUMNS if c not in frame.columns]
    if missing:
        raise SchemaError(
            f"Event calendar missing column(s): {', '.join(missing)}", missing=missing
        )

    events = []
    for raw_date, label in zip(frame["date"], frame["label"]):
        try:
            events.append(Event(date=parse_iso_date(raw_date), label=label.strip()))
        except ValueError:
            raise SchemaError(f"Event calendar has an invalid date: {raw_date!r}")

    events.sort(key=lambda e: e.date)
    repeated = sorted({e.date for a, e in zip(events, events[1:]) if a.date == e.date})
    if repeated:
        raise SchemaError(
            f"Event calendar repeats date(s): {', '.join(d.isoformat() for d in repeated)}"
        )
    logger.info(f"Loaded {len(events)} events from {path}")
    return EventCalendar(events=events)


def event_indicator(dates: Sequence[date], calendar: EventCalendar) -> EventIndicator:
    """
    Mark series positions that fall on a calendar date.

    Args:
        dates: Series dates
        calendar: Event calendar

    Returns:
        EventIndicator with 1 on event dates and the uncovered events
    """
    event_dates = calendar.dates
    values = np.array([1 if d in event_dates else 0 for d in dates], dtype=int)
    present = set(dates)
    uncovered = [e for e in calendar.events if e.date not in present]
    if uncovered:
        logger.warning(
            f"{len(uncovered)} event(s) not covered by the series: "
            + ", ".join(e.date.isoformat() for e in uncovered)
        )
    return EventIndicator(dates=list(dates), values=values, uncovered=uncovered)


def event_day_comparison(delta: Sequence[float], indicator: Sequence[int]) -> EventComparison:
    """
    Mean change on event days versus non-event days.

    Args:
        delta: Delta values
        indicator: 0/1 per delta position (same dates)

    Returns:
        EventComparison; an empty group has mean None

    Raises:
        DimensionMismatchError: If the lengths differ
    """
    delta = np.asarray(delta, dtype=float)
    mask = np.asarray(indicator).astype(bool)
    if len(delta) != len(mask):
        raise DimensionMismatchError(
            f"delta ({len(delta)}) and indicator ({len(mask)}) differ in length"
        )
    n_event = int(mask.sum())
    n_non_event = len(mask) - n_event
    comparison = EventComparison(
        mean_event=float(delta[mask].mean()) if n_event else None,
        mean_non_event=float(delta[~mask].mean()) if n_non_event else None,
        n_event=n_event,
        n_non_event=n_non_event,
    )
    for flag in comparison.flags:
        logger.warning(f"Event comparison: {flag}")
    return comparison


def correlate_series(
    delta: DatedSeries, smoothed: DatedSeries, correlate: Correlate
) -> DatedSeries:
    """
    Pick the series tested against the event indicator.

    Args:
        delta: Daily delta series
        smoothed: Smoothed delta series
        correlate: "delta", "abs_delta" or "smoothed"

    Returns:
        Series to correlate
    """
    if correlate == "delta":
        return delta
    if correlate == "abs_delta":
        return DatedSeries(dates=list(delta.dates), values=np.abs(delta.values))
    if correlate == "smoothed":
        return smoothed
    raise ValueError(f"unknown correlate: {correlate}")
