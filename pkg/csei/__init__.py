"""
CSEI pipeline

Builds a daily Community Sentiment and Engagement Index from a dump of
social-media posts and analyzes how it responds to dated events.
"""

__version__ = "0.1.0"

from csei.models import FeatureMatrix, IndexSeries, RunMetadata, WeightVector
from csei.utils import (
    ConfigurationError,
    CSEIError,
    StageError,
    get_logger,
    setup_logger,
)

__all__ = [
    "__version__",
    # Models
    "FeatureMatrix",
    "IndexSeries",
    "RunMetadata",
    "WeightVector",
    # Utils
    "ConfigurationError",
    "CSEIError",
    "StageError",
    "get_logger",
    "setup_logger",
]
