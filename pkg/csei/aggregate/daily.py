"""
Daily feature aggregation.

Collapses scored posts into one FeatureMatrix row per calendar day that
has at least one post.
"""

import math
from collections import Counter
from typing import Iterable, Literal, Sequence

import numpy as np
import pandas as pd

from ..models import EMOTIONS, FEATURE_COLUMNS, FeatureMatrix, ScoredPost
from ..utils import get_logger

logger = get_logger(__name__)

EmotionAggregation = Literal["mean_prob", "label_share"]
DiversityMeasure = Literal["distinct", "shannon_entropy"]


def _normalized_domains(domains: Iterable[str]) -> list[str]:
    cleaned = (d.strip().lower() for d in domains)
    return [d for d in cleaned if d]


def domain_diversity(domains: Iterable[str]) -> int:
    """
    Count distinct non-empty domains after lowercasing and trimming.

    Args:
        domains: Domain strings (repeats allowed)

    Returns:
        Number of distinct domains
    """
    return len(set(_normalized_domains(domains)))


def domain_entropy(domains: Iterable[str]) -> float:
    """
    Shannon entropy (natural log) of the normalized domain distribution.

    Args:
        domains: Domain strings (repeats allowed)

    Returns:
        Entropy in nats; 0 for zero or one distinct domain
    """
    counts = Counter(_normalized_domains(domains))
    total = sum(counts.values())
    if total == 0:
        return 0.0
    return -math.fsum((n / total) * math.log(n / total) for n in counts.values())


def _post_rows(posts: Sequence[ScoredPost], emotion_agg: EmotionAggregation) -> pd.DataFrame:
    rows = []
    for post in posts:
        if emotion_agg == "label_share":
            dominant = post.dominant_emotion
            emotions = [1.0 if e == dominant else 0.0 for e in EMOTIONS]
        else:
            emotions = list(post.emotions)
        rows.append(
            [
                post.post_date,
                post.id,
                post.compound,
                float(post.score),
                post.readability,
                post.offensive,
                post.domain,
                *emotions,
            ]
        )
    columns = ["post_date", "id", "compound", "score", "readability", "offensive", "domain"]
    frame = pd.DataFrame(rows, columns=columns + list(EMOTIONS))
    # Fixed row order makes the float sums independent of input order
    return frame.sort_values(["post_date", "id"], kind="mergesort").reset_index(drop=True)


def build_daily_features(
    posts: Sequence[ScoredPost],
    emotion_agg: EmotionAggregation = "mean_prob",
    diversity: DiversityMeasure = "distinct",
) -> FeatureMatrix:
    """
    Group posts by UTC date into the 13-column feature matrix.

    Args:
        posts: Scored posts
        emotion_agg: mean_prob (mean probabilities) or label_share (share
            of posts whose dominant emotion is each label)
        diversity: distinct (distinct-domain count) or shannon_entropy

    Returns:
        FeatureMatrix in canonical column order; empty for empty input
    """
    if not posts:
        return FeatureMatrix.empty()

    frame = _post_rows(posts, emotion_agg)
    grouped = frame.groupby("post_date", sort=True)
    measure = domain_diversity if diversity == "distinct" else domain_entropy

    daily = pd.DataFrame(
        {
            "compound_sentiment": grouped["compound"].mean(),
            "daily_total_score": grouped["score"].sum(),
            "daily_post_count": grouped.size().astype(float),
            "readability": grouped["readability"].mean(),
            "offensive": grouped["offensive"].mean(),
            "domain_diversity": grouped["domain"].agg(lambda d: float(measure(d))),
            **{emotion: grouped[emotion].mean() for emotion in EMOTIONS},
        }
    )

    matrix = FeatureMatrix(
        dates=list(daily.index),
        values=daily[list(FEATURE_COLUMNS)].to_numpy(dtype=float),
        columns=FEATURE_COLUMNS,
    )
    logger.info(
        f"Aggregated {len(posts)} posts into {matrix.n_rows} days "
        f"({emotion_agg}, {diversity})"
    )
    return matrix


def emotion_row_sums(matrix: FeatureMatrix) -> np.ndarray:
    """Per-row sum of the emotion columns."""
    return np.sum([matrix.column(e) for e in EMOTIONS], axis=0)


POST_FEATURE_COLUMNS: tuple[str, ...] = ("compound", "score", "readability", "offensive") + EMOTIONS


def post_feature_rows(posts: Sequence[ScoredPost]) -> np.ndarray:
    """
    Numeric per-post rows for post-level outlier detection.

    Args:
        posts: Scored posts

    Returns:
        Array of shape (posts, POST_FEATURE_COLUMNS)
    """
    rows = [
        [post.compound, float(post.score), post.readability, post.offensive, *post.emotions]
        for post in posts
    ]
    return np.asarray(rows, dtype=float).reshape(len(rows), len(POST_FEATURE_COLUMNS))
