"""
Data models for social-media posts.

A post moves through three shapes: RawPost as parsed from the dump,
CleanPost after the preprocessing filters, and ScoredPost once sentiment,
readability and the external emotion/offensive scores are attached.
"""

from dataclasses import dataclass, field, fields
from datetime import date
from typing import Any

EMOTIONS: tuple[str, ...] = ("fear", "surprise", "joy", "sadness", "anger", "disgust", "neutral")
"""Emotion labels in external-table order."""

NEUTRAL_EMOTIONS: tuple[float, ...] = tuple(1.0 if e == "neutral" else 0.0 for e in EMOTIONS)


@dataclass(frozen=True, kw_only=True)
class RawPost:
    """One post as ingested (dump schema)."""

    id: str
    created_utc: int
    selftext: str = ""
    title: str = ""
    score: int = 0
    domain: str = ""
    subreddit_name: str = ""
    nsfw: bool = False
    url: str = ""
    type: str = ""

    @property
    def text(self) -> str:
        """Title and selftext joined, the input to text-based filters and scorers."""
        return f"{self.title}\n{self.selftext}" if self.selftext else self.title

    def as_dict(self) -> dict[str, Any]:
        """Get the fields as a plain dictionary (artifact row)."""
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True, kw_only=True)
class CleanPost(RawPost):
    """A post that survived preprocessing."""

    clean_text: str
    post_date: date

    @classmethod
    def from_raw(cls, raw: RawPost, clean_text: str, post_date: date) -> "CleanPost":
        """Build a clean post from its raw form."""
        return cls(**raw.as_dict(), clean_text=clean_text, post_date=post_date)


@dataclass(frozen=True, kw_only=True)
class ScoredPost(CleanPost):
    """A clean post with all per-post scores attached."""

    compound: float
    emotions: tuple[float, ...] = NEUTRAL_EMOTIONS
    offensive: float = 0.0
    readability: float = 0.0
    external_missing: bool = False
    readability_degenerate: bool = False

    def __post_init__(self) -> None:
        if len(self.emotions) != len(EMOTIONS):
            raise ValueError(f"expected {len(EMOTIONS)} emotion values, got {len(self.emotions)}")

    def emotion(self, name: str) -> float:
        """Get one emotion probability by label."""
        return self.emotions[EMOTIONS.index(name)]

    @property
    def dominant_emotion(self) -> str:
        """Label with the highest probability (first label wins ties)."""
        best = max(range(len(EMOTIONS)), key=lambda i: (self.emotions[i], -i))
        return EMOTIONS[best]

    def as_dict(self) -> dict[str, Any]:
        row = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "emotions"}
        row.update(zip(EMOTIONS, self.emotions))
        return row


@dataclass
class ScoringFlags:
    """Counters collected while scoring a batch."""

    missing_external: list[str] = field(default_factory=list)
    renormalized: list[str] = field(default_factory=list)
    degenerate_readability: list[str] = field(default_factory=list)

    def as_dict(self) -> dict[str, int]:
        """Summarize as counts for run metadata."""
        return {
            "missing_external": len(self.missing_external),
            "renormalized": len(self.renormalized),
            "degenerate_readability": len(self.degenerate_readability),
        }
