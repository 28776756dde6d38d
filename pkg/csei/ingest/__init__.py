"""Post ingestion: parsing, preprocessing filters and text cleaning."""

from csei.ingest.filters import (
    FilterResult,
    PostFilter,
    clean_text,
    deletion_marker,
    in_date_window,
    is_bot,
    is_deleted,
    is_english,
)
from csei.ingest.parser import ParseResult, detect_format, parse_posts, read_posts
from csei.ingest.resources import (
    load_english_words,
    load_stopwords,
    read_token_table,
    read_word_list,
)

__all__ = [
    "FilterResult",
    "ParseResult",
    "PostFilter",
    "clean_text",
    "deletion_marker",
    "detect_format",
    "in_date_window",
    "is_bot",
    "is_deleted",
    "is_english",
    "load_english_words",
    "load_stopwords",
    "parse_posts",
    "read_posts",
    "read_token_table",
    "read_word_list",
]
