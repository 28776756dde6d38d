"""Per-post scoring: compound sentiment, readability and external scores."""

from csei.scoring.external import (
    EXTERNAL_COLUMNS,
    ExternalScore,
    attach_external_scores,
    load_external_scores,
    validate_external,
)
from csei.scoring.lexicon import Lexicon, load_lexicon
from csei.scoring.readability import (
    TextStatistics,
    count_syllables,
    flesch_reading_ease,
    text_statistics,
)
from csei.scoring.sentiment import compound_sentiment, normalize_score, tokenize

__all__ = [
    "EXTERNAL_COLUMNS",
    "ExternalScore",
    "Lexicon",
    "TextStatistics",
    "attach_external_scores",
    "compound_sentiment",
    "count_syllables",
    "flesch_reading_ease",
    "load_external_scores",
    "load_lexicon",
    "normalize_score",
    "text_statistics",
    "tokenize",
    "validate_external",
]
