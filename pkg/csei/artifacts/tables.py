"""
CSV and JSON stage artifacts.

Every intermediate the pipeline hands from one stage to the next is a
plain CSV with a header row. Floats are written with full round-trip
precision and read back with the round-trip parser, so a stage resumed
from disk sees exactly the values the previous stage produced.
"""

import json
from datetime import date
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from ..models import (
    FEATURE_COLUMNS,
    CleanPost,
    CorrelationMatrix,
    CorrelationResult,
    DatedSeries,
    EventComparison,
    EventIndicator,
    ExtremaReport,
    FeatureMatrix,
    IndexSeries,
    OutlierReport,
    ScoredPost,
    WeightVector,
)
from ..utils import InputFileError, SchemaError, get_logger, parse_iso_date

logger = get_logger(__name__)

CLEAN_POSTS = "clean_posts.csv"
SCORED_POSTS = "scored_posts.csv"
FEATURES = "features.csv"
OUTLIERS = "outliers.csv"
NORMALIZED = "normalized.csv"
WEIGHTS = "weights.csv"
INDEX = "index.csv"
CONTRIBUTIONS = "contributions.csv"
GROUPS = "groups.csv"
DELTAS = "deltas.csv"
SMOOTHED = "smoothed.csv"
CUMULATIVE = "cumulative.csv"
EXTREMA = "extrema.csv"
EVENT_STATS = "event_stats.csv"
CORRELATION_MATRIX = "correlation_matrix.csv"
GAPS = "gaps.csv"
EMOTION_CONTRIBUTIONS = "emotion_contributions.csv"
SUMMARY = "summary.md"
METADATA = "metadata.json"
ERROR = "error.json"
PLOTS_DIR = "plots"

CLEAN_POST_COLUMNS: tuple[str, ...] = (
    "id",
    "created_utc",
    "selftext",
    "title",
    "score",
    "domain",
    "subreddit_name",
    "nsfw",
    "url",
    "type",
    "clean_text",
    "post_date",
)


def write_frame(frame: pd.DataFrame, path: Path) -> Path:
    """
    Write a DataFrame as CSV with LF line endings and no index.

    Args:
        frame: Table to write
        path: Destination file

    Returns:
        Path written
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.debug(f"Wrote {len(frame)} row(s) to {path}")
    return path


def read_frame(path: Path, required: Sequence[str] = (), **kwargs: Any) -> pd.DataFrame:
    """
    Read a stage artifact and check its header.

    Args:
        path: CSV file
        required: Columns that must be present
        **kwargs: Extra pandas.read_csv arguments

    Returns:
        DataFrame

    Raises:
        InputFileError: If the file does not exist
        SchemaError: If a required column is missing
    """
    if not path.is_file():
        raise InputFileError(f"Artifact not found: {path}", path=path)
    kwargs.setdefault("float_precision", "round_trip")
    try:
        frame = pd.read_csv(path, **kwargs)
    except pd.errors.EmptyDataError:
        raise SchemaError(f"Artifact is empty: {path}", missing=list(required))
    missing = [c for c in required if c not in frame.columns]
    if missing:
        raise SchemaError(f"{path.name} missing column(s): {', '.join(missing)}", missing=missing)
    return frame


def _iso(dates: Sequence[date]) -> list[str]:
    return [d.isoformat() for d in dates]


def _dates(values: Sequence[Any], path: Path) -> list[date]:
    try:
        return [parse_iso_date(str(v)) for v in values]
    except ValueError as e:
        raise SchemaError(f"{path.name} has an invalid date: {e}")


def _optional(value: Optional[float]) -> float:
    return float("nan") if value is None else float(value)


# Posts


def write_clean_posts(posts: Sequence[CleanPost], path: Path) -> Path:
    """Write surviving posts in input order."""
    rows = [{**p.as_dict(), "post_date": p.post_date.isoformat()} for p in posts]
    return write_frame(pd.DataFrame(rows, columns=list(CLEAN_POST_COLUMNS)), path)


def read_clean_posts(path: Path) -> list[CleanPost]:
    """
    Read the clean-posts artifact back into CleanPost records.

    Args:
        path: clean_posts.csv

    Returns:
        Posts in file order
    """
    frame = read_frame(path, CLEAN_POST_COLUMNS, dtype=str, keep_default_na=False)
    posts = []
    try:
        for row in frame.to_dict(orient="records"):
            posts.append(
                CleanPost(
                    id=row["id"],
                    created_utc=int(row["created_utc"]),
                    selftext=row["selftext"],
                    title=row["title"],
                    score=int(row["score"]),
                    domain=row["domain"],
                    subreddit_name=row["subreddit_name"],
                    nsfw=row["nsfw"] == "True",
                    url=row["url"],
                    type=row["type"],
                    clean_text=row["clean_text"],
                    post_date=parse_iso_date(row["post_date"]),
                )
            )
    except ValueError as e:
        raise SchemaError(f"{path.name} has an invalid value: {e}")
    logger.info(f"Read {len(posts)} clean posts from {path}")
    return posts


def write_scored_posts(posts: Sequence[ScoredPost], path: Path) -> Path:
    """Write per-post scores for auditing."""
    rows = [{**p.as_dict(), "post_date": p.post_date.isoformat()} for p in posts]
    frame = pd.DataFrame(rows)
    if frame.empty:
        frame = pd.DataFrame(columns=["id", "post_date", "compound", "readability", "offensive"])
    return write_frame(frame, path)


# Matrices and index


def write_matrix(matrix: FeatureMatrix, path: Path) -> Path:
    """Write a dated matrix with a leading `date` column."""
    return write_frame(matrix.to_frame(), path)


def read_matrix(
    path: Path, columns: Optional[Sequence[str]] = FEATURE_COLUMNS
) -> FeatureMatrix:
    """
    Read a dated matrix artifact.

    Args:
        path: CSV with a `date` column and the named columns
        columns: Columns to take, in order (every non-date column when None)

    Returns:
        FeatureMatrix
    """
    frame = read_frame(path, ("date", *(columns or ())), dtype={"date": str})
    if columns is None:
        columns = [c for c in frame.columns if c != "date"]
    try:
        return FeatureMatrix.from_frame(frame, columns)
    except ValueError as e:
        raise SchemaError(f"{path.name} is not a valid dated matrix: {e}")


def write_outliers(report: OutlierReport, path: Path) -> Path:
    """Write one row per scored observation."""
    label = "date" if report.granularity == "daily" else "id"
    frame = pd.DataFrame(
        {
            label: report.labels,
            "anomaly_score": report.anomaly_scores,
            "forest_flag": np.asarray(report.forest_flags, dtype=bool),
            "pc1": report.pc1,
            "pc2": report.pc2,
            "pc_flag": np.asarray(report.pc_flags, dtype=bool),
            "removed": report.removed_mask,
        }
    )
    return write_frame(frame, path)


def write_weights(weights: WeightVector, path: Path) -> Path:
    """Write the `feature,weight,loading` file (readable by load_weights)."""
    frame = pd.DataFrame(
        {"feature": list(weights.features), "weight": weights.weights, "loading": weights.loadings}
    )
    return write_frame(frame, path)


def write_index(series: IndexSeries, path: Path) -> Path:
    """Write the `date,csei` file."""
    return write_frame(pd.DataFrame({"date": _iso(series.dates), "csei": series.values}), path)


def read_index(path: Path) -> IndexSeries:
    """
    Read a `date,csei` file (pipeline output or hand-written).

    Args:
        path: Index CSV

    Returns:
        IndexSeries without weight information

    Raises:
        SchemaError: On missing columns, bad values or unsorted dates
    """
    frame = read_frame(path, ("date", "csei"), dtype={"date": str})
    dates = _dates(frame["date"], path)
    if any(b <= a for a, b in zip(dates, dates[1:])):
        raise SchemaError(f"{path.name} dates must be unique and increasing")
    try:
        values = frame["csei"].astype(float).to_numpy()
    except ValueError as e:
        raise SchemaError(f"{path.name} has a non-numeric csei value: {e}")
    if not np.all(np.isfinite(values)):
        raise SchemaError(f"{path.name} has missing or non-finite csei values")
    logger.info(f"Read {len(dates)} index values from {path}")
    return IndexSeries(dates=dates, values=values)


# Analysis


def write_series(series: DatedSeries, path: Path, column: str) -> Path:
    """Write a `date,<column>` series."""
    return write_frame(pd.DataFrame({"date": _iso(series.dates), column: series.values}), path)


def write_extrema(report: ExtremaReport, dates: Sequence[date], path: Path) -> Path:
    """
    Write peaks then valleys with the detector parameters on every row.

    Args:
        report: Detected extrema
        dates: Dates of the series the indices refer to
        path: Destination file
    """
    rows = [
        {
            "kind": kind,
            "index": e.index,
            "date": dates[e.index].isoformat(),
            "value": e.value,
            "prominence": e.prominence,
            "window": report.window,
            "distance": report.distance,
            "threshold": report.prominence,
        }
        for kind, found in (("peak", report.peaks), ("valley", report.valleys))
        for e in found
    ]
    columns = ["kind", "index", "date", "value", "prominence", "window", "distance", "threshold"]
    return write_frame(pd.DataFrame(rows, columns=columns), path)


def write_event_stats(
    correlate: str,
    correlation: Optional[CorrelationResult],
    n: int,
    comparison: EventComparison,
    indicator: EventIndicator,
    path: Path,
) -> Path:
    """
    Write the one-row event statistics table.

    Undefined statistics (constant indicator, empty group) are left blank.
    """
    row = {
        "correlate": correlate,
        "r": _optional(correlation.r if correlation else None),
        "p_value": _optional(correlation.p_value if correlation else None),
        "n": n,
        "mean_event": _optional(comparison.mean_event),
        "mean_non_event": _optional(comparison.mean_non_event),
        "n_event": comparison.n_event,
        "n_non_event": comparison.n_non_event,
        "uncovered_events": len(indicator.uncovered),
    }
    return write_frame(pd.DataFrame([row]), path)


def write_correlation_matrix(matrix: CorrelationMatrix, path: Path) -> Path:
    """Write the matrix in long form, one row per ordered column pair."""
    k = len(matrix.columns)
    frame = pd.DataFrame(
        {
            "row": [matrix.columns[i] for i in range(k) for _ in range(k)],
            "column": [matrix.columns[j] for _ in range(k) for j in range(k)],
            "r": matrix.r.ravel(),
            "p_value": matrix.p.ravel(),
            "defined": matrix.defined.ravel(),
        }
    )
    return write_frame(frame, path)


def write_gaps(gaps: Sequence[tuple[date, date, int]], path: Path) -> Path:
    """Write retained-date gaps longer than one day."""
    frame = pd.DataFrame(
        [(a.isoformat(), b.isoformat(), days) for a, b, days in gaps],
        columns=["previous_date", "next_date", "days"],
    )
    return write_frame(frame, path)


def write_shares(shares: Mapping[str, float], path: Path) -> Path:
    """Write `feature,share` rows."""
    frame = pd.DataFrame({"feature": list(shares), "share": list(shares.values())})
    return write_frame(frame, path)


# JSON


def write_json(data: Mapping[str, Any], path: Path) -> Path:
    """Write a JSON document with stable key order."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, ensure_ascii=False)
        f.write("\n")
    return path


def read_json(path: Path) -> dict[str, Any]:
    """Read a JSON document; a missing file yields an empty mapping."""
    if not path.is_file():
        return {}
    with path.open(encoding="utf-8") as f:
        return json.load(f)
