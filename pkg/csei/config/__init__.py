"""Configuration management for the CSEI pipeline."""

from csei.config.manager import (
    ConfigManager,
    load_config,
    merge_overrides,
    parse_override_args,
)
from csei.config.models import (
    SECTION_NAMES,
    AggregateConfig,
    AnalysisConfig,
    IndexConfig,
    IngestConfig,
    OutlierConfig,
    PathsConfig,
    RunConfig,
    ScoringConfig,
    all_keys,
    nest_flat_keys,
    section_for_key,
)

__all__ = [
    # Manager
    "ConfigManager",
    "load_config",
    "merge_overrides",
    "parse_override_args",
    # Models
    "SECTION_NAMES",
    "AggregateConfig",
    "AnalysisConfig",
    "IndexConfig",
    "IngestConfig",
    "OutlierConfig",
    "PathsConfig",
    "RunConfig",
    "ScoringConfig",
    "all_keys",
    "nest_flat_keys",
    "section_for_key",
]
