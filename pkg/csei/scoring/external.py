"""
External emotion/offensive score table and per-post score attachment.

The emotion and offensiveness probabilities come from transformer models
run outside this package; they are read from a CSV keyed by post id.
Compound sentiment and readability are computed here.
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from ..models import EMOTIONS, NEUTRAL_EMOTIONS, CleanPost, ScoredPost, ScoringFlags
from ..utils import InputFileError, SchemaError, ScoringDataError, get_logger
from .lexicon import Lexicon
from .readability import flesch_reading_ease, text_statistics
from .sentiment import DEFAULT_ALPHA, compound_sentiment

logger = get_logger(__name__)

EXTERNAL_COLUMNS: tuple[str, ...] = ("id",) + EMOTIONS + ("offensive",)
SUM_TOLERANCE = 1e-6


@dataclass(frozen=True)
class ExternalScore:
    """Precomputed model outputs for one post."""

    emotions: tuple[float, ...]
    offensive: float = 0.0


def load_external_scores(path: Path) -> dict[str, ExternalScore]:
    """
    Read the external score table.

    Args:
        path: CSV with header id,fear,surprise,joy,sadness,anger,disgust,neutral,offensive

    Returns:
        Post id -> ExternalScore (first occurrence wins on repeated ids)

    Raises:
        InputFileError: If the file does not exist
        SchemaError: If a column is missing
        ScoringDataError: If a value is not a number
    """
    if not path.is_file():
        raise InputFileError(f"External score file not found: {path}", path=path)
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    missing = [c for c in EXTERNAL_COLUMNS if c not in frame.columns]
    if missing:
        raise SchemaError(
            f"External score table missing column(s): {', '.join(missing)}", missing=missing
        )

    table: dict[str, ExternalScore] = {}
    repeated = 0
    for record in frame[list(EXTERNAL_COLUMNS)].itertuples(index=False):
        post_id = str(record[0]).strip()
        if post_id in table:
            repeated += 1
            continue
        try:
            values = [float(v) for v in record[1:]]
        except ValueError:
            raise ScoringDataError(f"Non-numeric score for post {post_id}", post_id=post_id)
        table[post_id] = ExternalScore(emotions=tuple(values[:-1]), offensive=values[-1])

    if repeated:
        logger.warning(f"Ignored {repeated} repeated id(s) in {path}")
    logger.info(f"Loaded external scores for {len(table)} posts")
    return table


def validate_external(post_id: str, score: ExternalScore) -> tuple[tuple[float, ...], bool]:
    """
    Check one external row and renormalize its emotion vector.

    Args:
        post_id: Post the row belongs to
        score: Raw external scores

    Returns:
        (emotions summing to 1, whether renormalization was needed)

    Raises:
        ScoringDataError: On negative, non-finite or all-zero probabilities,
            or offensive outside [0, 1]
    """
    emotions = np.asarray(score.emotions, dtype=float)
    if len(emotions) != len(EMOTIONS):
        raise ScoringDataError(f"Post {post_id} has {len(emotions)} emotion values", post_id)
    if not np.all(np.isfinite(emotions)) or not math.isfinite(score.offensive):
        raise ScoringDataError(f"Non-finite score for post {post_id}", post_id)
    if np.any(emotions < 0):
        raise ScoringDataError(f"Negative emotion probability for post {post_id}", post_id)
    if not 0.0 <= score.offensive <= 1.0:
        raise ScoringDataError(f"Offensive probability outside [0, 1] for post {post_id}", post_id)

    total = math.fsum(emotions)
    if total == 0:
        raise ScoringDataError(f"All-zero emotion vector for post {post_id}", post_id)
    if abs(total - 1.0) <= SUM_TOLERANCE:
        return tuple(float(e) for e in emotions), False
    return tuple(float(e) / total for e in emotions), True


def attach_external_scores(
    posts: Sequence[CleanPost],
    table: Mapping[str, ExternalScore],
    lexicon: Lexicon,
    alpha: float = DEFAULT_ALPHA,
    readability_degenerate_value: float = 0.0,
    flags: Optional[ScoringFlags] = None,
) -> list[ScoredPost]:
    """
    Score posts with the built-in scorers and attach external scores.

    Posts absent from the table get the neutral default (neutral = 1,
    offensive = 0) and are flagged.

    Args:
        posts: Clean posts
        table: Post id -> external scores
        lexicon: Sentiment lexicon
        alpha: Compound normalization constant
        readability_degenerate_value: Readability of word-less posts
        flags: Collector for per-post flags (created if None)

    Returns:
        Scored posts in input order

    Raises:
        ScoringDataError: If an external row is invalid
    """
    flags = flags if flags is not None else ScoringFlags()
    scored: list[ScoredPost] = []

    for post in posts:
        external = table.get(post.id)
        if external is None:
            emotions, offensive = NEUTRAL_EMOTIONS, 0.0
            flags.missing_external.append(post.id)
        else:
            emotions, renormalized = validate_external(post.id, external)
            offensive = external.offensive
            if renormalized:
                flags.renormalized.append(post.id)

        text = post.text
        degenerate = text_statistics(text).is_degenerate
        if degenerate:
            flags.degenerate_readability.append(post.id)

        scored.append(
            ScoredPost(
                **post.as_dict(),
                compound=compound_sentiment(text, lexicon, alpha),
                emotions=emotions,
                offensive=offensive,
                readability=flesch_reading_ease(text, readability_degenerate_value),
                external_missing=external is None,
                readability_degenerate=degenerate,
            )
        )

    if flags.missing_external:
        logger.warning(
            f"{len(flags.missing_external)} post(s) missing external scores, neutral default used"
        )
    if flags.renormalized:
        logger.warning(f"Renormalized emotion vectors of {len(flags.renormalized)} post(s)")
    if flags.degenerate_readability:
        logger.info(f"{len(flags.degenerate_readability)} post(s) have no words for readability")
    return scored
