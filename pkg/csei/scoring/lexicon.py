"""
Sentiment lexicon: token valences, booster increments and negators.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..ingest.resources import read_token_table, read_word_list
from ..utils import get_logger, resolve_input

logger = get_logger(__name__)

LEXICON_FILE = "lexicon.tsv"
BOOSTERS_FILE = "boosters.tsv"
NEGATORS_FILE = "negators.txt"


@dataclass(frozen=True)
class Lexicon:
    """Valence lexicon with booster and negator tables."""

    entries: dict[str, float]
    boosters: dict[str, float] = field(default_factory=dict)
    negators: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        for table in (self.entries, self.boosters, self.negators):
            for token in table:
                if not token or token != token.lower():
                    raise ValueError(f"lexicon tokens must be lowercase and non-empty: {token!r}")

    def valence(self, token: str) -> Optional[float]:
        """Get the valence of a lowercase token, or None if unknown."""
        return self.entries.get(token)

    def is_negator(self, token: str) -> bool:
        """Check a lowercase token for negation, including n't contractions."""
        return token in self.negators or token.replace("'", "") in self.negators or "n't" in token

    @property
    def vocabulary(self) -> frozenset[str]:
        """Every token the lexicon knows."""
        return frozenset(self.entries) | frozenset(self.boosters) | self.negators

    def negated(self) -> "Lexicon":
        """Copy with every valence sign-flipped."""
        return Lexicon(
            entries={t: -v for t, v in self.entries.items()},
            boosters=dict(self.boosters),
            negators=self.negators,
        )


def load_lexicon(
    lexicon_path: Optional[Path] = None,
    boosters_path: Optional[Path] = None,
    negators_path: Optional[Path] = None,
) -> Lexicon:
    """
    Load the lexicon files (bundled files for unset paths).

    Args:
        lexicon_path: token<TAB>valence file
        boosters_path: token<TAB>increment file
        negators_path: one negator per line

    Returns:
        Lexicon

    Raises:
        InputFileError: If a file is missing
        ConfigurationError: If a file is malformed
    """
    lexicon = Lexicon(
        entries=read_token_table(resolve_input(lexicon_path, LEXICON_FILE)),
        boosters=read_token_table(resolve_input(boosters_path, BOOSTERS_FILE)),
        negators=read_word_list(resolve_input(negators_path, NEGATORS_FILE)),
    )
    logger.info(
        f"Lexicon: {len(lexicon.entries)} entries, {len(lexicon.boosters)} boosters, "
        f"{len(lexicon.negators)} negators"
    )
    return lexicon
