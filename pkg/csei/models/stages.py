"""
Data models for stage results.

Each pipeline stage returns one of these so the CLI can report on it
without re-reading the artifacts it just wrote.
"""

from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Optional

from csei.models.features import FeatureMatrix
from csei.models.metadata import FilterLedger
from csei.models.posts import ScoringFlags
from csei.models.results import (
    CorrelationMatrix,
    CorrelationResult,
    DatedSeries,
    EventComparison,
    EventIndicator,
    ExtremaReport,
    IndexSeries,
    NormalizationStats,
    OutlierReport,
    WeightVector,
)


@dataclass
class IngestResults:
    """Outcome of the ingest stage."""

    ledger: FilterLedger
    output_path: Path
    malformed_records: list[int] = field(default_factory=list)

    @property
    def survivors(self) -> int:
        """Posts written to the clean-posts artifact."""
        return self.ledger.survivors


@dataclass
class BuildResults:
    """Outcome of the build stage."""

    posts_scored: int
    scoring_flags: ScoringFlags
    daily_features: FeatureMatrix
    retained: FeatureMatrix
    normalization: NormalizationStats
    weights: WeightVector
    index: IndexSeries
    contributions: FeatureMatrix
    groups: FeatureMatrix
    outliers: Optional[OutlierReport] = None

    @property
    def days_removed(self) -> int:
        """Daily rows dropped by the outlier stage."""
        return self.daily_features.n_rows - self.retained.n_rows


@dataclass
class AnalysisResults:
    """Outcome of the analyze stage."""

    index: IndexSeries
    delta: DatedSeries
    smoothed: DatedSeries
    cumulative: DatedSeries
    extrema: ExtremaReport
    correlate: str
    indicator: EventIndicator
    comparison: EventComparison
    correlation: Optional[CorrelationResult] = None
    correlation_matrix: Optional[CorrelationMatrix] = None
    gaps: list[tuple[date, date, int]] = field(default_factory=list)
    emotion_shares: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    plots: list[Path] = field(default_factory=list)
