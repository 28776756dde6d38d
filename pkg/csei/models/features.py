"""
Daily feature matrix model.

The matrix is the contract between the aggregation, outlier and index
stages: one row per calendar day, thirteen named columns in canonical order.
"""

from dataclasses import dataclass, field
from datetime import date
from typing import Sequence

import numpy as np
import pandas as pd

from csei.models.posts import EMOTIONS

FEATURE_COLUMNS: tuple[str, ...] = (
    "compound_sentiment",
    "daily_total_score",
    "daily_post_count",
    "readability",
    "offensive",
    "domain_diversity",
    "anger",
    "disgust",
    "fear",
    "joy",
    "neutral",
    "sadness",
    "surprise",
)

EMOTION_COLUMNS: tuple[str, ...] = tuple(c for c in FEATURE_COLUMNS if c in EMOTIONS)

# Reporting groups for the sentiment / engagement / quality decomposition
FEATURE_GROUPS: dict[str, tuple[str, ...]] = {
    "sentiment": ("compound_sentiment",) + EMOTION_COLUMNS,
    "engagement": ("daily_total_score", "daily_post_count", "domain_diversity"),
    "quality": ("readability", "offensive"),
}


@dataclass
class FeatureMatrix:
    """Dated rows of named real-valued features."""

    dates: list[date]
    values: np.ndarray
    columns: tuple[str, ...] = field(default=FEATURE_COLUMNS)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        # An empty array carries no column count to infer
        width = len(self.columns) if values.size == 0 else -1
        self.values = values.reshape(len(self.dates), width)
        if self.values.shape[1] != len(self.columns):
            raise ValueError(
                f"matrix has {self.values.shape[1]} columns but {len(self.columns)} names"
            )
        if any(b <= a for a, b in zip(self.dates, self.dates[1:])):
            raise ValueError("feature matrix dates must be strictly increasing")

    @classmethod
    def empty(cls, columns: Sequence[str] = FEATURE_COLUMNS) -> "FeatureMatrix":
        """Create a matrix with no rows."""
        return cls(dates=[], values=np.empty((0, len(columns))), columns=tuple(columns))

    @property
    def n_rows(self) -> int:
        """Number of dated rows."""
        return len(self.dates)

    @property
    def is_empty(self) -> bool:
        """Check if the matrix holds no rows."""
        return self.n_rows == 0

    def column(self, name: str) -> np.ndarray:
        """Get one column by name."""
        return self.values[:, self.columns.index(name)]

    def select_rows(self, keep: np.ndarray) -> "FeatureMatrix":
        """
        Keep rows where the boolean mask is true.

        Args:
            keep: Boolean mask, one entry per row

        Returns:
            New matrix restricted to the kept rows
        """
        keep = np.asarray(keep, dtype=bool)
        dates = [d for d, k in zip(self.dates, keep) if k]
        return FeatureMatrix(dates=dates, values=self.values[keep], columns=self.columns)

    def to_frame(self) -> pd.DataFrame:
        """Convert to a DataFrame with a leading ISO `date` column."""
        frame = pd.DataFrame(self.values, columns=list(self.columns))
        frame.insert(0, "date", [d.isoformat() for d in self.dates])
        return frame

    @classmethod
    def from_frame(
        cls, frame: pd.DataFrame, columns: Sequence[str] = FEATURE_COLUMNS
    ) -> "FeatureMatrix":
        """
        Build from a DataFrame holding a `date` column and the named columns.

        Args:
            frame: Source frame
            columns: Column names to take, in order

        Returns:
            FeatureMatrix
        """
        dates = [date.fromisoformat(str(d)) for d in frame["date"]]
        values = frame[list(columns)].to_numpy(dtype=float)
        return cls(dates=dates, values=values, columns=tuple(columns))
