"""
Readers for the plain-text resource files (word lists and token tables).

Lines starting with '#' and blank lines are ignored in every format.
"""

from pathlib import Path
from typing import Optional

from ..utils import ConfigurationError, InputFileError, get_logger, resolve_input

logger = get_logger(__name__)

STOPWORDS_FILE = "stopwords.txt"
ENGLISH_WORDS_FILE = "english_words.txt"


def _content_lines(path: Path) -> list[tuple[int, str]]:
    if not path.is_file():
        raise InputFileError(f"Resource file not found: {path}", path=path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputFileError(f"Cannot read resource file {path}: {e}", path=path)
    lines = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            lines.append((number, stripped))
    return lines


def read_word_list(path: Path) -> frozenset[str]:
    """
    Read a one-token-per-line file into a lowercase set.

    Args:
        path: Word list file

    Returns:
        Set of lowercase tokens

    Raises:
        InputFileError: If the file is missing or unreadable
    """
    words = frozenset(token.lower() for _, token in _content_lines(path))
    logger.debug(f"Loaded {len(words)} words from {path}")
    return words


def read_token_table(path: Path) -> dict[str, float]:
    """
    Read `token<TAB>value` lines.

    Args:
        path: Table file

    Returns:
        Mapping of lowercase token to value

    Raises:
        InputFileError: If the file is missing or unreadable
        ConfigurationError: If a line is malformed or a token repeats
    """
    table: dict[str, float] = {}
    for number, line in _content_lines(path):
        parts = line.split("\t")
        if len(parts) != 2:
            raise ConfigurationError(f"{path}:{number}: expected token<TAB>value")
        token = parts[0].strip().lower()
        try:
            value = float(parts[1])
        except ValueError:
            raise ConfigurationError(f"{path}:{number}: invalid number {parts[1]!r}")
        if not token:
            raise ConfigurationError(f"{path}:{number}: empty token")
        if token in table:
            raise ConfigurationError(f"{path}:{number}: duplicate token {token!r}")
        table[token] = value
    logger.debug(f"Loaded {len(table)} entries from {path}")
    return table


def load_stopwords(path: Optional[Path] = None) -> frozenset[str]:
    """Load the stopword list (bundled list when path is None)."""
    return read_word_list(resolve_input(path, STOPWORDS_FILE))


def load_english_words(path: Optional[Path] = None) -> frozenset[str]:
    """Load the English word list (bundled list when path is None)."""
    return read_word_list(resolve_input(path, ENGLISH_WORDS_FILE))
