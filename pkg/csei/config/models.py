"""
Configuration models using Pydantic.

This module defines the run configuration for the CSEI pipeline. Keys are
unique across sections so that every key can be overridden by a flag of
the same name.
"""

from datetime import date
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class _Section(BaseModel):
    """Base for config sections: unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid", validate_assignment=True)


class PathsConfig(_Section):
    """Input and output locations. Unset optional inputs use bundled data."""

    posts: Optional[Path] = Field(default=None, description="Post dump (CSV or JSON lines)")
    posts_format: Literal["csv", "jsonl", "auto"] = Field(
        default="auto", description="Post file format; auto uses the file extension"
    )
    external_scores: Optional[Path] = Field(
        default=None, description="CSV id,fear,surprise,joy,sadness,anger,disgust,neutral,offensive"
    )
    lexicon: Optional[Path] = Field(default=None, description="token<TAB>valence lines")
    boosters: Optional[Path] = Field(default=None, description="token<TAB>increment lines")
    negators: Optional[Path] = Field(default=None, description="One negator per line")
    stopwords: Optional[Path] = Field(default=None, description="One stopword per line")
    english_words: Optional[Path] = Field(default=None, description="Extra English word list")
    events: Optional[Path] = Field(default=None, description="Event calendar CSV date,label")
    weights: Optional[Path] = Field(default=None, description="Weight file for weight_mode=load")
    index_file: Optional[Path] = Field(
        default=None, description="Index CSV for analyze (default: <output_dir>/index.csv)"
    )
    output_dir: Path = Field(default=Path("csei-output"), description="Artifact directory")


class IngestConfig(_Section):
    """Preprocessing filters."""

    min_date: date = Field(default=date(2020, 2, 11), description="First retained post date")
    max_date: date = Field(default=date(2021, 10, 25), description="Last retained post date")
    english_filter: bool = Field(default=True, description="Drop posts failing the English test")
    english_threshold: float = Field(
        default=0.30, ge=0.0, le=1.0, description="Minimum known-word fraction"
    )

    @model_validator(mode="after")
    def validate_window(self) -> "IngestConfig":
        """Validate the date window."""
        if self.min_date > self.max_date:
            raise ValueError("min_date must not be after max_date")
        return self


class ScoringConfig(_Section):
    """Built-in scorer parameters."""

    alpha: float = Field(default=15.0, gt=0.0, description="Compound normalization constant")
    readability_degenerate_value: float = Field(
        default=0.0, description="Readability assigned to posts with no words"
    )


class AggregateConfig(_Section):
    """Daily aggregation switches."""

    emotion_agg: Literal["mean_prob", "label_share"] = Field(
        default="mean_prob", description="Daily emotion feature definition"
    )
    diversity: Literal["distinct", "shannon_entropy"] = Field(
        default="distinct", description="Daily domain diversity definition"
    )


class OutlierConfig(_Section):
    """Isolation forest and principal-component filter."""

    enabled: bool = Field(default=True, description="Run the outlier stage")
    granularity: Literal["daily", "post"] = Field(
        default="daily", description="Observations the outlier stage operates on"
    )
    n_trees: int = Field(default=100, ge=1, le=10000, description="Trees in the forest")
    subsample_size: int = Field(
        default=256, ge=2, description="Rows per tree (capped at the row count)"
    )
    seed: int = Field(default=42, ge=0, lt=2**64, description="Master seed for stochastic stages")
    contamination: float = Field(
        default=0.005, ge=0.0, lt=1.0, description="Fraction flagged by the forest"
    )
    pc_filter: bool = Field(default=True, description="Apply the PC1/PC2 score filter")
    pc1_max: float = Field(default=25.0, description="Flag when PC1 score is below this")
    pc2_min: float = Field(default=7.5, description="...and PC2 score is at least this")


class IndexConfig(_Section):
    """Index construction."""

    weight_mode: Literal["derive", "load"] = Field(
        default="derive", description="Derive weights from PC1 or load a weight file"
    )
    normalization: Literal["minmax"] = Field(
        default="minmax", description="Feature normalization policy"
    )


class AnalysisConfig(_Section):
    """Event-response analytics."""

    window: int = Field(default=7, ge=1, description="Trailing smoothing window (days)")
    distance: int = Field(default=7, ge=1, description="Peak/valley neighbourhood d (samples)")
    prominence: Optional[float] = Field(
        default=None, ge=0.0, description="Prominence threshold p (default 0.5 x std)"
    )
    correlate: Literal["delta", "abs_delta", "smoothed"] = Field(
        default="delta", description="Series correlated with the event indicator"
    )
    plots: bool = Field(default=False, description="Write SVG plots")


SECTION_NAMES: tuple[str, ...] = (
    "paths",
    "ingest",
    "scoring",
    "aggregate",
    "outliers",
    "index",
    "analysis",
)


class RunConfig(BaseModel):
    """Complete pipeline configuration."""

    model_config = ConfigDict(extra="forbid")

    paths: PathsConfig = Field(default_factory=PathsConfig)
    ingest: IngestConfig = Field(default_factory=IngestConfig)
    scoring: ScoringConfig = Field(default_factory=ScoringConfig)
    aggregate: AggregateConfig = Field(default_factory=AggregateConfig)
    outliers: OutlierConfig = Field(default_factory=OutlierConfig)
    index: IndexConfig = Field(default_factory=IndexConfig)
    analysis: AnalysisConfig = Field(default_factory=AnalysisConfig)

    @model_validator(mode="before")
    @classmethod
    def route_flat_keys(cls, data: Any) -> Any:
        """Accept flat key-value files by routing each key to its section."""
        if not isinstance(data, dict):
            return data
        return nest_flat_keys(data)

    @property
    def seed(self) -> int:
        """Master seed for every stochastic stage."""
        return self.outliers.seed

    def snapshot(self) -> dict[str, Any]:
        """JSON-serializable copy for run metadata."""
        return self.model_dump(mode="json")


def section_for_key(key: str) -> Optional[str]:
    """
    Find the section that owns a leaf key.

    Args:
        key: Leaf key name (underscores, e.g. "n_trees")

    Returns:
        Section name, or None for unknown keys
    """
    for name in SECTION_NAMES:
        model = RunConfig.model_fields[name].annotation
        if key in model.model_fields:  # type: ignore[union-attr]
            return name
    return None


def all_keys() -> dict[str, str]:
    """Map every leaf key to its section."""
    keys: dict[str, str] = {}
    for name in SECTION_NAMES:
        model = RunConfig.model_fields[name].annotation
        for key in model.model_fields:  # type: ignore[union-attr]
            keys[key] = name
    return keys


def nest_flat_keys(data: dict[str, Any]) -> dict[str, dict[str, Any]]:
    """
    Route flat leaf keys to their sections, keeping nested sections.

    Args:
        data: Nested, flat or mixed key-value mapping

    Returns:
        New mapping of section name -> key-value mapping

    Raises:
        ValueError: On an unknown key or a section that is not a mapping
    """
    nested: dict[str, dict[str, Any]] = {}
    for key, value in data.items():
        if key in SECTION_NAMES:
            if not isinstance(value, dict):
                raise ValueError(f"section '{key}' must be a mapping")
            nested.setdefault(key, {}).update(value)
            continue
        section = section_for_key(key)
        if section is None:
            raise ValueError(f"unknown configuration key: {key}")
        nested.setdefault(section, {})[key] = value
    return nested
