"""Outlier removal: isolation forest and principal-component score filter."""

from csei.outliers.detector import (
    OutlierDetector,
    contamination_count,
    contamination_filter,
    detect_outliers,
)
from csei.outliers.forest import (
    IsolationForest,
    IsolationTree,
    anomaly_scores,
    average_path_length,
    fit_isolation_forest,
)
from csei.outliers.projection import PCProjection, pc_score_filter, threshold_flags

__all__ = [
    "IsolationForest",
    "IsolationTree",
    "OutlierDetector",
    "PCProjection",
    "anomaly_scores",
    "average_path_length",
    "contamination_count",
    "contamination_filter",
    "detect_outliers",
    "fit_isolation_forest",
    "pc_score_filter",
    "threshold_flags",
]
