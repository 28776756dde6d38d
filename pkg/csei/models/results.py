"""
Data models for index construction and analysis results.

This module contains dataclasses for the artifacts produced by the build
and analyze stages.
"""

from dataclasses import dataclass, field
from datetime import date
from typing import Literal, Optional

import numpy as np


@dataclass
class NormalizationStats:
    """Per-column minimum and maximum used for min-max scaling."""

    columns: tuple[str, ...]
    minimum: np.ndarray
    maximum: np.ndarray
    constant_columns: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if np.any(self.minimum > self.maximum):
            raise ValueError("normalization minimum exceeds maximum")


@dataclass
class WeightVector:
    """Per-feature index weights with the PC1 loadings they came from."""

    features: tuple[str, ...]
    weights: np.ndarray
    loadings: np.ndarray
    explained_variance_ratio: Optional[float] = None
    source: Literal["derived", "loaded"] = "derived"

    def __post_init__(self) -> None:
        self.weights = np.asarray(self.weights, dtype=float)
        self.loadings = np.asarray(self.loadings, dtype=float)
        if len(self.weights) != len(self.features) or len(self.loadings) != len(self.features):
            raise ValueError("weights, loadings and feature names must have equal length")
        if np.any(self.weights < 0):
            raise ValueError("weights must be non-negative")

    @property
    def total(self) -> float:
        """Sum of the weights."""
        return float(np.sum(self.weights))

    def as_mapping(self) -> dict[str, float]:
        """Map feature name to weight."""
        return {f: float(w) for f, w in zip(self.features, self.weights)}


@dataclass
class DatedSeries:
    """A real-valued series indexed by retained calendar dates."""

    dates: list[date]
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=float)
        if len(self.dates) != len(self.values):
            raise ValueError("dates and values must have equal length")

    def __len__(self) -> int:
        return len(self.values)


@dataclass
class IndexSeries(DatedSeries):
    """Daily index values and the weights that produced them."""

    weights_used: Optional[WeightVector] = None


@dataclass
class OutlierReport:
    """Per-row outcome of the outlier stage."""

    labels: list[str]
    anomaly_scores: np.ndarray
    forest_flags: np.ndarray
    pc1: np.ndarray
    pc2: np.ndarray
    pc_flags: np.ndarray
    granularity: Literal["daily", "post"] = "daily"
    explained_variance: tuple[float, float] = (0.0, 0.0)
    notes: list[str] = field(default_factory=list)

    @property
    def removed_mask(self) -> np.ndarray:
        """Rows flagged by either detector."""
        return np.asarray(self.forest_flags, dtype=bool) | np.asarray(self.pc_flags, dtype=bool)

    @property
    def removed_indices(self) -> list[int]:
        """Sorted indices of removed rows."""
        return [int(i) for i in np.flatnonzero(self.removed_mask)]

    @property
    def n_removed(self) -> int:
        """Number of removed rows."""
        return len(self.removed_indices)


@dataclass
class Extremum:
    """A detected peak or valley."""

    index: int
    value: float
    prominence: float


@dataclass
class ExtremaReport:
    """Peaks and valleys of a smoothed series with the detector parameters."""

    peaks: list[Extremum]
    valleys: list[Extremum]
    window: int
    distance: int
    prominence: float


@dataclass
class CorrelationResult:
    """Pearson correlation with its two-sided significance."""

    r: float
    p_value: float
    n: int
    t_statistic: float = 0.0

    @property
    def dof(self) -> int:
        """Degrees of freedom of the t test."""
        return self.n - 2


@dataclass
class CorrelationMatrix:
    """Pairwise r / p over named columns; undefined cells are flagged."""

    columns: tuple[str, ...]
    r: np.ndarray
    p: np.ndarray
    defined: np.ndarray

    def cell(self, a: str, b: str) -> tuple[float, float]:
        """Get (r, p) for a column pair."""
        i, j = self.columns.index(a), self.columns.index(b)
        return float(self.r[i, j]), float(self.p[i, j])


@dataclass(frozen=True)
class Event:
    """A dated calendar event."""

    date: date
    label: str


@dataclass
class EventCalendar:
    """Sorted list of unique-dated events."""

    events: list[Event]

    def __post_init__(self) -> None:
        dates = [e.date for e in self.events]
        if any(b <= a for a, b in zip(dates, dates[1:])):
            raise ValueError("event dates must be unique and sorted")

    @property
    def dates(self) -> set[date]:
        """Event dates as a set."""
        return {e.date for e in self.events}

    def __len__(self) -> int:
        return len(self.events)


@dataclass
class EventIndicator:
    """0/1 event series aligned to series dates, plus uncovered events."""

    dates: list[date]
    values: np.ndarray
    uncovered: list[Event] = field(default_factory=list)

    @property
    def n_events(self) -> int:
        """Number of marked positions."""
        return int(np.sum(self.values))


@dataclass
class EventComparison:
    """Mean index change on event vs non-event days."""

    mean_event: Optional[float]
    mean_non_event: Optional[float]
    n_event: int
    n_non_event: int

    @property
    def flags(self) -> list[str]:
        """Names of undefined group means."""
        out = []
        if self.mean_event is None:
            out.append("mean_event_undefined")
        if self.mean_non_event is None:
            out.append("mean_non_event_undefined")
        return out
