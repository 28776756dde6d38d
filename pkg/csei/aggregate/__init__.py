"""Daily feature aggregation."""

from csei.aggregate.daily import (
    POST_FEATURE_COLUMNS,
    build_daily_features,
    domain_diversity,
    domain_entropy,
    emotion_row_sums,
    post_feature_rows,
)

__all__ = [
    "POST_FEATURE_COLUMNS",
    "build_daily_features",
    "domain_diversity",
    "domain_entropy",
    "emotion_row_sums",
    "post_feature_rows",
]
