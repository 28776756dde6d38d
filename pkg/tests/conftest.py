"""
Shared fixtures: a deterministic synthetic post dump with planted
filter cases, its external score table, and run configurations.
"""

from datetime import date, datetime, timedelta, timezone
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
import yaml

from csei.config import RunConfig
from csei.models import EMOTIONS

START_DATE = date(2020, 2, 11)
N_DAYS = 140
N_POSTS = 1000

PLANTED_DELETED = 3
PLANTED_REMOVED = 2
PLANTED_BOT = 4
PLANTED_OUT_OF_WINDOW = 5
EXPECTED_SURVIVORS = (
    N_POSTS - PLANTED_DELETED - PLANTED_REMOVED - PLANTED_BOT - PLANTED_OUT_OF_WINDOW
)

# Every word is in the bundled stopword, lexicon or English word lists
WORDS = [
    "people", "vaccine", "lockdown", "home", "work", "today", "mask", "family",
    "hospital", "virus", "news", "week", "good", "bad", "happy", "sad", "great",
    "terrible", "love", "hate", "the", "and", "we", "are", "for", "with", "this",
    "is", "our", "very", "not",
]  # fmt: skip

DOMAINS = ["self.coronavirus", "youtube.com", "reddit.com", "cnn.com", "bbc.co.uk"]

POST_COLUMNS = [
    "id", "created_utc", "domain", "selftext", "title", "score",
    "subreddit_name", "nsfw", "url", "type",
]  # fmt: skip


def epoch_at_noon(day: date, offset_seconds: int = 0) -> int:
    """UNIX seconds at 12:00 UTC on a day, shifted by an offset."""
    noon = datetime(day.year, day.month, day.day, 12, tzinfo=timezone.utc)
    return int(noon.timestamp()) + offset_seconds


def sentence(rng: np.random.Generator, length: int) -> str:
    """Random sentence over the known-word vocabulary."""
    words = rng.choice(WORDS, size=length)
    text = " ".join(words)
    return text[0].upper() + text[1:] + "."


def make_post(
    rng: np.random.Generator, post_id: str, day: date, selftext: str | None = None
) -> dict:
    """One dump row with English title and body."""
    body = selftext if selftext is not None else " ".join(
        sentence(rng, int(rng.integers(5, 15))) for _ in range(int(rng.integers(1, 4)))
    )
    return {
        "id": post_id,
        "created_utc": epoch_at_noon(day, int(rng.integers(-3 * 3600, 3 * 3600))),
        "domain": DOMAINS[int(rng.integers(len(DOMAINS)))],
        "selftext": body,
        "title": sentence(rng, int(rng.integers(3, 8))),
        "score": int(rng.integers(0, 500)),
        "subreddit_name": "coronavirus",
        "nsfw": False,
        "url": f"https://www.reddit.com/r/coronavirus/{post_id}",
        "type": "post",
    }


def synthetic_posts(seed: int = 7) -> pd.DataFrame:
    """
    1,000 posts over 140 days with planted deleted, removed, bot and
    out-of-window posts. Every other post is English with a unique id.
    """
    rng = np.random.default_rng(seed)
    rows = []
    regular = EXPECTED_SURVIVORS
    for i in range(regular):
        rows.append(make_post(rng, f"p{i:04d}", START_DATE + timedelta(days=i % N_DAYS)))

    planted = []
    for i in range(PLANTED_DELETED):
        planted.append(make_post(rng, f"del{i}", START_DATE, selftext="[deleted]"))
    for i in range(PLANTED_REMOVED):
        planted.append(make_post(rng, f"rem{i}", START_DATE, selftext="[removed]"))
    for i in range(PLANTED_BOT):
        body = f"{sentence(rng, 6)} I am a bot, and this action was performed automatically."
        planted.append(make_post(rng, f"bot{i}", START_DATE, selftext=body))
    for i, day in enumerate([date(2019, 12, 15), date(2019, 12, 31), date(2020, 2, 10),
                             date(2021, 10, 26), date(2021, 12, 1)]):  # fmt: skip
        planted.append(make_post(rng, f"old{i}", day))
    assert len(planted) == N_POSTS - regular

    rows.extend(planted)
    order = rng.permutation(len(rows))
    return pd.DataFrame([rows[i] for i in order], columns=POST_COLUMNS)


def external_scores(posts: pd.DataFrame, seed: int = 11) -> pd.DataFrame:
    """Dirichlet emotion probabilities and a low offensive score per post."""
    rng = np.random.default_rng(seed)
    emotions = rng.dirichlet(np.ones(len(EMOTIONS)), size=len(posts))
    frame = pd.DataFrame(emotions, columns=list(EMOTIONS))
    frame.insert(0, "id", posts["id"].to_numpy())
    frame["offensive"] = rng.uniform(0.0, 0.3, size=len(posts))
    return frame


@pytest.fixture
def posts_frame():
    """Synthetic post dump as a DataFrame."""
    return synthetic_posts()


@pytest.fixture
def posts_csv(tmp_path, posts_frame):
    """Synthetic post dump written as CSV."""
    path = tmp_path / "posts.csv"
    posts_frame.to_csv(path, index=False)
    return path


@pytest.fixture
def scores_csv(tmp_path, posts_frame):
    """External emotion/offensive table for the synthetic posts."""
    path = tmp_path / "scores.csv"
    external_scores(posts_frame).to_csv(path, index=False)
    return path


@pytest.fixture
def run_settings(tmp_path, posts_csv, scores_csv):
    """Nested configuration mapping for a fast end-to-end run."""
    return {
        "paths": {
            "posts": str(posts_csv),
            "external_scores": str(scores_csv),
            "output_dir": str(tmp_path / "out"),
        },
        "outliers": {"n_trees": 25, "pc_filter": False},
    }


@pytest.fixture
def run_config(run_settings):
    """Validated RunConfig for the synthetic dump."""
    return RunConfig.model_validate(run_settings)


@pytest.fixture
def config_file(tmp_path, run_settings) -> Path:
    """The run settings written as a YAML config file."""
    path = tmp_path / "csei.yaml"
    path.write_text(yaml.safe_dump(run_settings, sort_keys=False), encoding="utf-8")
    return path
