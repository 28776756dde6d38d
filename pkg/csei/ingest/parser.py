"""
Post dump parsing.

Reads CSV (header row, RFC 4180 quoting) or JSON-lines dumps into RawPost
records. Rows that cannot be turned into a post are counted as malformed
and skipped; schema problems abort the parse.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, BinaryIO, Literal, Optional, Union

import pandas as pd

from ..models import RawPost
from ..utils import IngestionError, InputFileError, SchemaError, get_logger, utc_date

logger = get_logger(__name__)

PostFormat = Literal["csv", "jsonl"]

REQUIRED_COLUMNS: tuple[str, ...] = ("id", "created_utc", "domain", "selftext", "title", "score")
OPTIONAL_COLUMNS: tuple[str, ...] = ("subreddit_name", "nsfw", "url", "type")

# Dump exports flatten the subreddit object into dotted columns
HEADER_ALIASES: dict[str, str] = {
    "subreddit.name": "subreddit_name",
    "subreddit.nsfw": "nsfw",
}

_TRUE_VALUES = {"true", "t", "1", "yes", "y"}


class MalformedRecord(ValueError):
    """A single record cannot be converted into a post."""


@dataclass
class ParseResult:
    """Posts in input order plus the malformed-record count."""

    posts: list[RawPost] = field(default_factory=list)
    malformed: int = 0
    malformed_records: list[int] = field(default_factory=list)

    def reject(self, record_number: int, reason: str) -> None:
        """Count one malformed record."""
        self.malformed += 1
        self.malformed_records.append(record_number)
        logger.debug(f"Record {record_number} malformed: {reason}")


def detect_format(path: Path) -> PostFormat:
    """
    Infer the post format from a file extension.

    Args:
        path: Post file

    Returns:
        "jsonl" for .jsonl/.ndjson/.json, otherwise "csv"
    """
    return "jsonl" if path.suffix.lower() in {".jsonl", ".ndjson", ".json"} else "csv"


def read_posts(path: Path, format: Union[PostFormat, Literal["auto"]] = "auto") -> ParseResult:
    """
    Parse a post dump from disk.

    Args:
        path: Post file
        format: csv, jsonl or auto (by extension)

    Returns:
        ParseResult

    Raises:
        InputFileError: If the file does not exist
    """
    if not path.is_file():
        raise InputFileError(f"Posts file not found: {path}", path=path)
    resolved: PostFormat = detect_format(path) if format == "auto" else format
    logger.info(f"Parsing {resolved} posts from {path}")
    with open(path, "rb") as f:
        return parse_posts(f, resolved)


def parse_posts(source: BinaryIO, format: PostFormat) -> ParseResult:
    """
    Parse posts from a UTF-8 byte stream.

    Args:
        source: Binary stream
        format: csv or jsonl

    Returns:
        ParseResult with posts in input order

    Raises:
        IngestionError: If the stream cannot be read or decoded
        SchemaError: If required columns are missing
    """
    try:
        text = source.read().decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise IngestionError(f"Post source is not valid UTF-8: {e}")
    except OSError as e:
        raise IngestionError(f"Cannot read post source: {e}")

    result = _parse_csv(text) if format == "csv" else _parse_jsonl(text)
    if result.malformed:
        logger.warning(f"Skipped {result.malformed} malformed record(s)")
    logger.info(f"Parsed {len(result.posts)} posts")
    return result


def _parse_csv(text: str) -> ParseResult:
    result = ParseResult()
    bad_lines: list[list[str]] = []

    def on_bad_line(fields: list[str]) -> None:
        bad_lines.append(fields)
        return None

    try:
        frame = pd.read_csv(
            io.StringIO(text),
            dtype=str,
            keep_default_na=False,
            engine="python",
            on_bad_lines=on_bad_line,
        )
    except pd.errors.EmptyDataError:
        raise SchemaError("Post file has no header row", missing=list(REQUIRED_COLUMNS))
    except (pd.errors.ParserError, csv.Error) as e:
        raise IngestionError(f"Cannot parse CSV posts: {e}")

    frame = frame.rename(columns=lambda c: HEADER_ALIASES.get(str(c).strip(), str(c).strip()))
    _check_columns(list(frame.columns))

    for number, bad in enumerate(bad_lines, start=1):
        result.reject(-number, f"wrong field count ({len(bad)})")

    for number, record in enumerate(frame.to_dict(orient="records"), start=1):
        try:
            result.posts.append(record_to_post(record))
        except MalformedRecord as e:
            result.reject(number, str(e))
    return result


def _parse_jsonl(text: str) -> ParseResult:
    result = ParseResult()
    schema_checked = False
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            result.reject(number, f"invalid JSON: {e.msg}")
            continue
        if not isinstance(record, dict):
            result.reject(number, "not a JSON object")
            continue
        record = _flatten(record)
        if not schema_checked:
            _check_columns(list(record))
            schema_checked = True
        try:
            result.posts.append(record_to_post(record))
        except MalformedRecord as e:
            result.reject(number, str(e))
    return result


def _flatten(record: dict[str, Any]) -> dict[str, Any]:
    flat: dict[str, Any] = {}
    for key, value in record.items():
        if key == "subreddit" and isinstance(value, dict):
            flat.setdefault("subreddit_name", value.get("name", ""))
            flat.setdefault("nsfw", value.get("nsfw", False))
            continue
        flat[HEADER_ALIASES.get(key, key)] = value
    return flat


def _check_columns(columns: list[str]) -> None:
    missing = [c for c in REQUIRED_COLUMNS if c not in columns]
    if missing:
        raise SchemaError(f"Missing required column(s): {', '.join(missing)}", missing=missing)


def record_to_post(record: dict[str, Any]) -> RawPost:
    """
    Convert one parsed record into a RawPost.

    Args:
        record: Column name -> value

    Returns:
        RawPost

    Raises:
        MalformedRecord: If a required value is absent or invalid
    """
    post_id = _text(record.get("id")).strip()
    if not post_id:
        raise MalformedRecord("empty id")
    created = _integer(record.get("created_utc"), "created_utc")
    try:
        utc_date(created)
    except (OverflowError, OSError, ValueError):
        raise MalformedRecord(f"created_utc out of range: {created}")
    return RawPost(
        id=post_id,
        created_utc=created,
        selftext=_text(record.get("selftext")),
        title=_text(record.get("title")),
        score=_integer(record.get("score"), "score"),
        domain=_text(record.get("domain")),
        subreddit_name=_text(record.get("subreddit_name")),
        nsfw=_boolean(record.get("nsfw")),
        url=_text(record.get("url")),
        type=_text(record.get("type")),
    )


def _text(value: Any) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return str(value)


def _integer(value: Any, name: str) -> int:
    if isinstance(value, bool):
        raise MalformedRecord(f"{name} is not numeric")
    if isinstance(value, int):
        return value
    try:
        number = float(_text(value).strip())
    except ValueError:
        raise MalformedRecord(f"{name} is not numeric: {value!r}")
    if not math.isfinite(number):
        raise MalformedRecord(f"{name} is not finite")
    return int(number)


def _boolean(value: Optional[Any]) -> bool:
    if isinstance(value, bool):
        return value
    return _text(value).strip().lower() in _TRUE_VALUES
