"""
Preprocessing filters and text cleaning.

Posts are checked against the rules in FILTER_RULES order and charged to
the first rule they fail, so the removal ledger always balances.
"""

import re
from dataclasses import dataclass, field
from datetime import date
from typing import AbstractSet, Iterable, Optional

from ..models import FILTER_RULES, CleanPost, FilterLedger, RawPost
from ..utils import get_logger, utc_date

logger = get_logger(__name__)

DELETED_MARKER = "[deleted]"
REMOVED_MARKER = "[removed]"
BOT_PHRASE = "i am a bot"
DEFAULT_ENGLISH_THRESHOLD = 0.30

_URL = re.compile(r"(?:[a-z][a-z0-9+.\-]*://|www\.)\S+", re.IGNORECASE)
_HASHTAG = re.compile(r"#\w+")
_MENTION = re.compile(r"@\w+")
_DIGITS = re.compile(r"\d+")
_NON_ALPHA = re.compile(r"[^A-Za-z\s]")


def deletion_marker(post: RawPost) -> Optional[str]:
    """
    Get the moderation marker a post's selftext carries.

    Args:
        post: Post to check

    Returns:
        "deleted", "removed", or None
    """
    body = post.selftext.strip()
    if body == DELETED_MARKER:
        return "deleted"
    if body == REMOVED_MARKER:
        return "removed"
    return None


def is_deleted(post: RawPost) -> bool:
    """Check if the selftext is exactly a [deleted] or [removed] marker."""
    return deletion_marker(post) is not None


def is_bot(post: RawPost) -> bool:
    """Check for the bot self-identification phrase in selftext or title."""
    return BOT_PHRASE in post.selftext.lower() or BOT_PHRASE in post.title.lower()


def clean_text(text: str, stopwords: AbstractSet[str]) -> str:
    """
    Reduce text to lowercase alphabetic tokens without stopwords.

    Rules run in a fixed order: URLs, hashtags, mentions, digits, other
    non-alphabetic characters, lowercasing, stopword removal.

    Args:
        text: Raw text
        stopwords: Lowercase stopwords to drop

    Returns:
        Tokens joined by single spaces (possibly empty)
    """
    text = _URL.sub(" ", text)
    text = _HASHTAG.sub(" ", text)
    text = _MENTION.sub(" ", text)
    text = _DIGITS.sub(" ", text)
    text = _NON_ALPHA.sub(" ", text)
    tokens = text.lower().split()
    return " ".join(t for t in tokens if t not in stopwords)


def is_english(text: str, lexicon: AbstractSet[str], threshold: float) -> bool:
    """
    Check if enough cleaned tokens are known English words.

    Args:
        text: Cleaned text
        lexicon: Known-word set
        threshold: Minimum known fraction

    Returns:
        True if known/total >= threshold; False for empty text
    """
    tokens = text.split()
    if not tokens:
        return False
    known = sum(1 for t in tokens if t in lexicon)
    return known / len(tokens) >= threshold


def in_date_window(post: CleanPost, min_date: date, max_date: date) -> bool:
    """Check min_date <= post_date <= max_date."""
    return min_date <= post.post_date <= max_date


@dataclass
class FilterResult:
    """Surviving posts and the removal ledger."""

    posts: list[CleanPost] = field(default_factory=list)
    ledger: FilterLedger = field(default_factory=FilterLedger)


class PostFilter:
    """
    Applies the preprocessing rules to a batch of parsed posts.

    Text-based rules look at the title and selftext together.
    """

    def __init__(
        self,
        stopwords: AbstractSet[str],
        vocabulary: AbstractSet[str],
        min_date: date,
        max_date: date,
        english_filter: bool = True,
        english_threshold: float = DEFAULT_ENGLISH_THRESHOLD,
    ):
        """
        Initialize post filter.

        Args:
            stopwords: Stopwords removed from clean_text
            vocabulary: Known English words (lexicon, stopwords and word list)
            min_date: First retained UTC date
            max_date: Last retained UTC date
            english_filter: Apply the English-coverage rule
            english_threshold: Minimum known-word fraction
        """
        self.stopwords = frozenset(stopwords)
        self.vocabulary = frozenset(vocabulary)
        self.min_date = min_date
        self.max_date = max_date
        self.english_filter = english_filter
        self.english_threshold = english_threshold

    def failed_rule(self, post: RawPost, seen_ids: AbstractSet[str]) -> Optional[str]:
        """
        Find the first content rule a post fails (the date window is checked
        on the cleaned post).

        Args:
            post: Parsed post
            seen_ids: Ids already accepted or charged earlier in the batch

        Returns:
            Rule name from FILTER_RULES, or None if the post passes
        """
        if post.id in seen_ids:
            return "duplicate_id"
        marker = deletion_marker(post)
        if marker is not None:
            return marker
        if is_bot(post):
            return "bot"
        if self.english_filter:
            tokens = clean_text(post.text, frozenset())
            if not is_english(tokens, self.vocabulary, self.english_threshold):
                return "non_english"
        return None

    def apply(self, posts: Iterable[RawPost], malformed: int = 0) -> FilterResult:
        """
        Filter posts, preserving input order among survivors.

        Args:
            posts: Parsed posts in input order
            malformed: Records the parser already rejected

        Returns:
            FilterResult with clean posts and a balanced ledger
        """
        result = FilterResult()
        result.ledger.malformed = malformed
        seen: set[str] = set()

        for post in posts:
            result.ledger.ingested += 1
            rule = self.failed_rule(post, seen)
            seen.add(post.id)
            if rule is not None:
                result.ledger.charge(rule)
                continue
            clean = CleanPost.from_raw(
                post,
                clean_text=clean_text(post.text, self.stopwords),
                post_date=utc_date(post.created_utc),
            )
            if not in_date_window(clean, self.min_date, self.max_date):
                result.ledger.charge("out_of_window")
                continue
            result.posts.append(clean)

        result.ledger.survivors = len(result.posts)
        removed = ", ".join(f"{r}={result.ledger.removals[r]}" for r in FILTER_RULES)
        logger.info(
            f"Kept {result.ledger.survivors}/{result.ledger.ingested} posts ({removed}, "
            f"malformed={malformed})"
        )
        return result
