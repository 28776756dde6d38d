"""
PC1 loadings and index weights.

Weights are either derived from the first principal component of the
normalized matrix (w = |l| / sum |l|) or loaded verbatim from a file.
"""

from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..models import FEATURE_COLUMNS, FeatureMatrix, WeightVector
from ..utils import (
    DegenerateDataError,
    InputFileError,
    SchemaError,
    bundled_path,
    get_logger,
)
from .linalg import principal_axes

logger = get_logger(__name__)

REFERENCE_WEIGHTS_FILE = "reference_weights.csv"
WEIGHT_FILE_COLUMNS: tuple[str, ...] = ("feature", "weight", "loading")
SIMPLEX_TOLERANCE = 1e-9


def pc1_loadings(normalized: Union[FeatureMatrix, np.ndarray]) -> tuple[np.ndarray, float]:
    """
    First principal axis of the column covariance and its variance share.

    Args:
        normalized: Normalized matrix (>= 2 rows, >= 1 column)

    Returns:
        (unit loadings oriented with the largest-magnitude component
        positive, explained variance ratio lambda_1 / sum lambda)

    Raises:
        DegenerateDataError: If there are fewer than 2 rows or no variance
    """
    values = normalized.values if isinstance(normalized, FeatureMatrix) else normalized
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.shape[0] < 2 or values.shape[1] < 1:
        raise DegenerateDataError("PC1 loadings need at least 2 rows and 1 column")
    axes = principal_axes(values)
    if axes.total_variance <= 0:
        raise DegenerateDataError("covariance matrix is all zero; PC1 is undefined")
    ratio = float(axes.eigenvalues[0] / axes.total_variance)
    logger.info(f"PC1 explains {ratio:.1%} of the variance")
    return axes.axes[:, 0].copy(), ratio


def weights_from_loadings(
    loadings: Sequence[float],
    features: Sequence[str] = FEATURE_COLUMNS,
    explained_variance_ratio: Optional[float] = None,
) -> WeightVector:
    """
    Convert loadings to simplex weights w(i) = |l(i)| / sum_j |l(j)|.

    Args:
        loadings: Signed loadings
        features: Feature names in loading order
        explained_variance_ratio: PC1 variance share to record

    Returns:
        WeightVector (source "derived")

    Raises:
        DegenerateDataError: If every loading is zero
    """
    loadings = np.asarray(loadings, dtype=float)
    magnitude = np.abs(loadings)
    total = magnitude.sum()
    if total == 0 or not np.isfinite(total):
        raise DegenerateDataError("all loadings are zero; weights are undefined")
    return WeightVector(
        features=tuple(features),
        weights=magnitude / total,
        loadings=loadings,
        explained_variance_ratio=explained_variance_ratio,
        source="derived",
    )


def derive_weights(normalized: FeatureMatrix) -> WeightVector:
    """
    Derive index weights from the normalized matrix.

    Args:
        normalized: Min-max normalized feature matrix

    Returns:
        WeightVector summing to 1
    """
    loadings, ratio = pc1_loadings(normalized)
    weights = weights_from_loadings(loadings, normalized.columns, ratio)
    if abs(weights.total - 1.0) > SIMPLEX_TOLERANCE:
        raise DegenerateDataError(f"derived weights sum to {weights.total}, not 1")
    return weights


def load_weights(
    path: Optional[Path] = None, features: Sequence[str] = FEATURE_COLUMNS
) -> WeightVector:
    """
    Load a weight file (feature,weight,loading) and use it verbatim.

    Rows are reordered to the given feature order; a blank loading is
    recorded as NaN. Weights that do not sum to 1 are kept as written.
    Text from `#` to the end of a line is a comment.

    Args:
        path: Weight CSV (bundled reference vector when None)
        features: Required features, each listed exactly once

    Returns:
        WeightVector (source "loaded")

    Raises:
        InputFileError: If the file does not exist
        SchemaError: On missing, repeated or unknown features, or bad values
    """
    path = path if path is not None else bundled_path(REFERENCE_WEIGHTS_FILE)
    if not path.is_file():
        raise InputFileError(f"Weight file not found: {path}", path=path)

    frame = pd.read_csv(
        path, dtype={"feature": str}, float_precision="round_trip", comment="#"
    )
    missing_columns = [c for c in WEIGHT_FILE_COLUMNS if c not in frame.columns]
    if missing_columns:
        raise SchemaError(
            f"Weight file missing column(s): {', '.join(missing_columns)}", missing=missing_columns
        )

    names = [str(f).strip() for f in frame["feature"]]
    repeated = sorted({n for n in names if names.count(n) > 1})
    missing = [f for f in features if f not in names]
    unknown = [n for n in names if n not in features]
    if repeated or missing or unknown:
        raise SchemaError(
            f"Weight file must list each feature exactly once "
            f"(missing: {missing}, repeated: {repeated}, unknown: {unknown})",
            missing=missing,
        )

    frame.index = names
    try:
        weights = frame.loc[list(features), "weight"].astype(float).to_numpy()
        loadings = frame.loc[list(features), "loading"].astype(float).to_numpy()
    except ValueError as e:
        raise SchemaError(f"Weight file has non-numeric values: {e}")
    if np.any(~np.isfinite(weights)) or np.any(weights < 0):
        raise SchemaError("Weight file weights must be finite and non-negative")

    vector = WeightVector(
        features=tuple(features), weights=weights, loadings=loadings, source="loaded"
    )
    if abs(vector.total - 1.0) > SIMPLEX_TOLERANCE:
        logger.warning(f"Loaded weights sum to {vector.total:.6g}; used as written")
    logger.info(f"Loaded {len(features)} weights from {path}")
    return vector
