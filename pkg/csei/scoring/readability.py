"""
Flesch Reading Ease with a vowel-group syllable heuristic.
"""

import re
from dataclasses import dataclass

WORD = re.compile(r"[A-Za-z]+")
SENTENCE_BREAK = re.compile(r"[.!?]+")
VOWEL_GROUP = re.compile(r"[aeiouy]+")


@dataclass(frozen=True)
class TextStatistics:
    """Word, sentence and syllable counts of a text."""

    words: int
    sentences: int
    syllables: int

    @property
    def is_degenerate(self) -> bool:
        """No words, so the readability formula is undefined."""
        return self.words == 0


def count_syllables(word: str) -> int:
    """
    Count syllables as vowel groups, minus a terminal silent 'e'.

    Args:
        word: Alphabetic word

    Returns:
        0 for the empty string, otherwise at least 1
    """
    if not word:
        return 0
    lower = word.lower()
    count = len(VOWEL_GROUP.findall(lower))
    if lower.endswith("e") and count > 1:
        count -= 1
    return max(count, 1)


def text_statistics(raw_text: str) -> TextStatistics:
    """
    Count words, sentences and syllables.

    Words are maximal alphabetic runs. Sentences are the '.', '!', '?'
    separated segments that contain a word, at least one when any word
    exists.

    Args:
        raw_text: Unmodified text

    Returns:
        TextStatistics
    """
    words = WORD.findall(raw_text)
    if not words:
        return TextStatistics(words=0, sentences=0, syllables=0)
    sentences = sum(1 for segment in SENTENCE_BREAK.split(raw_text) if WORD.search(segment))
    return TextStatistics(
        words=len(words),
        sentences=max(sentences, 1),
        syllables=sum(count_syllables(w) for w in words),
    )


def flesch_reading_ease(raw_text: str, degenerate_value: float = 0.0) -> float:
    """
    Compute 206.835 - 1.015 * words/sentences - 84.6 * syllables/words.

    Args:
        raw_text: Unmodified text
        degenerate_value: Value returned when the text has no words

    Returns:
        Reading ease score
    """
    stats = text_statistics(raw_text)
    if stats.is_degenerate:
        return degenerate_value
    return (
        206.835
        - 1.015 * (stats.words / stats.sentences)
        - 84.6 * (stats.syllables / stats.words)
    )
