"""
Min-max feature normalization.
"""

import numpy as np

from ..models import FeatureMatrix, NormalizationStats
from ..utils import DegenerateDataError, get_logger

logger = get_logger(__name__)


def minmax_normalize(matrix: FeatureMatrix) -> tuple[FeatureMatrix, NormalizationStats]:
    """
    Rescale every column to [0, 1] by (x - min) / (max - min).

    Constant columns map to 0 everywhere and are listed in the stats.

    Args:
        matrix: Non-empty feature matrix

    Returns:
        (normalized matrix, per-column min/max)

    Raises:
        DegenerateDataError: If the matrix has no rows
    """
    if matrix.is_empty:
        raise DegenerateDataError("cannot normalize an empty feature matrix")

    values = matrix.values
    minimum = values.min(axis=0)
    maximum = values.max(axis=0)
    span = maximum - minimum
    constant = span == 0

    normalized = np.zeros_like(values)
    varying = ~constant
    normalized[:, varying] = (values[:, varying] - minimum[varying]) / span[varying]
    normalized[:, varying] = np.clip(normalized[:, varying], 0.0, 1.0)

    constant_columns = [c for c, flag in zip(matrix.columns, constant) if flag]
    if constant_columns:
        logger.warning(f"Constant column(s) normalized to 0: {', '.join(constant_columns)}")

    stats = NormalizationStats(
        columns=matrix.columns,
        minimum=minimum,
        maximum=maximum,
        constant_columns=constant_columns,
    )
    return FeatureMatrix(dates=list(matrix.dates), values=normalized, columns=matrix.columns), stats
