"""
Composite index evaluation and contribution decomposition.
"""

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..models import FEATURE_GROUPS, FeatureMatrix, IndexSeries, WeightVector
from ..utils import DimensionMismatchError, SchemaError, get_logger

logger = get_logger(__name__)


def _aligned_weights(normalized: FeatureMatrix, weights: WeightVector) -> np.ndarray:
    if len(weights.weights) != len(normalized.columns):
        raise DimensionMismatchError(
            f"{len(weights.weights)} weights for {len(normalized.columns)} feature columns"
        )
    if tuple(weights.features) == tuple(normalized.columns):
        return weights.weights
    missing = [c for c in normalized.columns if c not in weights.features]
    if missing:
        raise SchemaError(f"No weight for feature(s): {', '.join(missing)}", missing=missing)
    mapping = weights.as_mapping()
    return np.array([mapping[c] for c in normalized.columns])


def compute_index(normalized: FeatureMatrix, weights: WeightVector) -> IndexSeries:
    """
    Evaluate csei(t) = sum_i w(i) * x_norm(i, t).

    Args:
        normalized: Normalized feature matrix
        weights: Per-feature weights

    Returns:
        IndexSeries

    Raises:
        DimensionMismatchError: If the weight count differs from the column count
    """
    w = _aligned_weights(normalized, weights)
    values = normalized.values @ w
    if weights.source == "derived":
        values = np.clip(values, 0.0, 1.0)
    logger.info(f"Computed index over {normalized.n_rows} days ({weights.source} weights)")
    return IndexSeries(dates=list(normalized.dates), values=values, weights_used=weights)


@dataclass
class Contributions:
    """Per-feature and per-group contributions to the index."""

    features: FeatureMatrix
    groups: FeatureMatrix

    @property
    def total(self) -> np.ndarray:
        """Index value per date (sum of feature contributions)."""
        return self.features.values.sum(axis=1)


def contribution_decomposition(
    normalized: FeatureMatrix,
    weights: WeightVector,
    groups: Mapping[str, Sequence[str]] = FEATURE_GROUPS,
) -> Contributions:
    """
    Split each day's index value into w(i) * x_norm(i, t) terms.

    Group sums cover the sentiment, engagement and quality reporting
    groups; a group only includes the columns present in the matrix.

    Args:
        normalized: Normalized feature matrix
        weights: Per-feature weights
        groups: Group name -> member features

    Returns:
        Contributions
    """
    w = _aligned_weights(normalized, weights)
    parts = normalized.values * w
    features = FeatureMatrix(dates=list(normalized.dates), values=parts, columns=normalized.columns)

    names = tuple(groups)
    sums = np.zeros((normalized.n_rows, len(names)))
    for k, name in enumerate(names):
        members = [normalized.columns.index(c) for c in groups[name] if c in normalized.columns]
        if members:
            sums[:, k] = parts[:, members].sum(axis=1)
    return Contributions(
        features=features,
        groups=FeatureMatrix(dates=list(normalized.dates), values=sums, columns=names),
    )


def contribution_shares(contributions: FeatureMatrix, columns: Sequence[str]) -> dict[str, float]:
    """
    Share of the whole-range index attributable to each named feature.

    Args:
        contributions: Per-feature contribution matrix
        columns: Features to report

    Returns:
        Feature -> mean contribution / mean index (0 when the index is 0)
    """
    total = float(contributions.values.sum())
    shares = {}
    for column in columns:
        part = float(contributions.column(column).sum())
        shares[column] = part / total if total > 0 else 0.0
    return shares
