"""
Outlier stage: isolation forest with contamination cut plus PC score filter.
"""

import math
from typing import Literal, Optional, Sequence

import numpy as np

from ..config import OutlierConfig
from ..models import OutlierReport
from ..utils import get_logger
from .forest import anomaly_scores, fit_isolation_forest
from .projection import DEFAULT_PC1_MAX, DEFAULT_PC2_MIN, pc_score_filter

logger = get_logger(__name__)


def contamination_count(n: int, rate: float) -> int:
    """
    Number of rows a contamination rate flags: ceil(rate * n).

    The product is rounded to 9 decimals first so that e.g. 0.005 * 1000
    does not become 6 through floating-point error.
    """
    if n <= 0 or rate <= 0:
        return 0
    return min(n, math.ceil(round(rate * n, 9)))


def contamination_filter(scores: np.ndarray, rate: float) -> np.ndarray:
    """
    Flag the ceil(rate * n) highest scores.

    Ties at the cut go to the lower row index.

    Args:
        scores: Anomaly score per row
        rate: Fraction in [0, 1)

    Returns:
        Boolean flag per row
    """
    if not 0.0 <= rate < 1.0:
        raise ValueError("contamination rate must be in [0, 1)")
    scores = np.asarray(scores, dtype=float)
    flags = np.zeros(len(scores), dtype=bool)
    k = contamination_count(len(scores), rate)
    if k:
        order = np.lexsort((np.arange(len(scores)), -scores))
        flags[order[:k]] = True
    return flags


class OutlierDetector:
    """
    Runs the forest and PC filters over the rows of a numeric matrix.

    Rows flagged by either detector are removed.
    """

    def __init__(
        self,
        n_trees: int = 100,
        subsample_size: int = 256,
        seed: int = 42,
        contamination: float = 0.005,
        pc_filter: bool = True,
        pc1_max: float = DEFAULT_PC1_MAX,
        pc2_min: float = DEFAULT_PC2_MIN,
    ):
        """
        Initialize detector.

        Args:
            n_trees: Trees in the forest
            subsample_size: Rows per tree (capped at the row count)
            seed: Master seed
            contamination: Fraction flagged by the forest
            pc_filter: Apply the PC1/PC2 filter
            pc1_max: PC1 threshold
            pc2_min: PC2 threshold
        """
        self.n_trees = n_trees
        self.subsample_size = subsample_size
        self.seed = seed
        self.contamination = contamination
        self.pc_filter = pc_filter
        self.pc1_max = pc1_max
        self.pc2_min = pc2_min

    @classmethod
    def from_config(cls, config: OutlierConfig) -> "OutlierDetector":
        """Build a detector from the outliers config section."""
        return cls(
            n_trees=config.n_trees,
            subsample_size=config.subsample_size,
            seed=config.seed,
            contamination=config.contamination,
            pc_filter=config.pc_filter,
            pc1_max=config.pc1_max,
            pc2_min=config.pc2_min,
        )

    def detect(
        self,
        values: np.ndarray,
        labels: Sequence[str],
        granularity: Literal["daily", "post"] = "daily",
    ) -> OutlierReport:
        """
        Score and flag every row.

        Args:
            values: Rows x features (raw scale)
            labels: Row labels (ISO dates or post ids)
            granularity: What a row represents

        Returns:
            OutlierReport

        Raises:
            FitError: If there are fewer than 2 rows
        """
        values = np.asarray(values, dtype=float)
        n = len(values)
        notes: list[str] = []

        psi = min(self.subsample_size, n)
        if psi < self.subsample_size:
            notes.append(f"subsample_size capped at {psi} rows")
        forest = fit_isolation_forest(values, self.n_trees, max(psi, 2), self.seed)
        scores = anomaly_scores(forest, values)
        forest_flags = contamination_filter(scores, self.contamination)

        pc1 = np.full(n, np.nan)
        pc2 = np.full(n, np.nan)
        pc_flags = np.zeros(n, dtype=bool)
        explained = (0.0, 0.0)
        if not self.pc_filter:
            notes.append("PC score filter disabled")
        elif n < 3 or values.shape[1] < 2:
            note = f"PC score filter skipped: {n} rows x {values.shape[1]} columns"
            logger.warning(note)
            notes.append(note)
        else:
            projection = pc_score_filter(values, self.pc1_max, self.pc2_min)
            pc1, pc2, pc_flags = projection.pc1, projection.pc2, projection.flags
            explained = projection.explained_variance
            notes.extend(projection.notes)

        report = OutlierReport(
            labels=list(labels),
            anomaly_scores=scores,
            forest_flags=forest_flags,
            pc1=pc1,
            pc2=pc2,
            pc_flags=pc_flags,
            granularity=granularity,
            explained_variance=explained,
            notes=notes,
        )
        logger.info(
            f"Outliers ({granularity}): forest {int(forest_flags.sum())}, "
            f"PC {int(pc_flags.sum())}, removed {report.n_removed}/{n}"
        )
        return report


def detect_outliers(
    values: np.ndarray,
    labels: Sequence[str],
    config: Optional[OutlierConfig] = None,
) -> OutlierReport:
    """
    Run the outlier stage with a config section (defaults when None).

    Args:
        values: Rows x features
        labels: Row labels
        config: Outlier settings

    Returns:
        OutlierReport
    """
    config = config or OutlierConfig()
    detector = OutlierDetector.from_config(config)
    return detector.detect(values, labels, config.granularity)
