"""Data models for the CSEI pipeline."""

from csei.models.features import (
    EMOTION_COLUMNS,
    FEATURE_COLUMNS,
    FEATURE_GROUPS,
    FeatureMatrix,
)
from csei.models.metadata import FILTER_RULES, FilterLedger, RunMetadata
from csei.models.posts import (
    EMOTIONS,
    NEUTRAL_EMOTIONS,
    CleanPost,
    RawPost,
    ScoredPost,
    ScoringFlags,
)
from csei.models.results import (
    CorrelationMatrix,
    CorrelationResult,
    DatedSeries,
    Event,
    EventCalendar,
    EventComparison,
    EventIndicator,
    Extremum,
    ExtremaReport,
    IndexSeries,
    NormalizationStats,
    OutlierReport,
    WeightVector,
)
from csei.models.stages import AnalysisResults, BuildResults, IngestResults

__all__ = [
    # Post models
    "EMOTIONS",
    "NEUTRAL_EMOTIONS",
    "CleanPost",
    "RawPost",
    "ScoredPost",
    "ScoringFlags",
    # Feature models
    "EMOTION_COLUMNS",
    "FEATURE_COLUMNS",
    "FEATURE_GROUPS",
    "FeatureMatrix",
    # Result models
    "CorrelationMatrix",
    "CorrelationResult",
    "DatedSeries",
    "Event",
    "EventCalendar",
    "EventComparison",
    "EventIndicator",
    "Extremum",
    "ExtremaReport",
    "IndexSeries",
    "NormalizationStats",
    "OutlierReport",
    "WeightVector",
    # Stage results
    "AnalysisResults",
    "BuildResults",
    "IngestResults",
    # Metadata
    "FILTER_RULES",
    "FilterLedger",
    "RunMetadata",
]
