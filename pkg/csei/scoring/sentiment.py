"""
Rule-based compound sentiment.

Implements a subset of the VADER heuristics: negation, boosters, ALL-CAPS
emphasis and exclamation emphasis, normalized to [-1, 1]. Idioms, "but"
clauses and emoji are not handled.
"""

import math
import string
from typing import Optional

import numpy as np

from .lexicon import Lexicon

DEFAULT_ALPHA = 15.0
NEGATION_SCALAR = -0.74
CAPS_INCREMENT = 0.733
EXCLAMATION_INCREMENT = 0.292
MAX_EXCLAMATIONS = 4
LOOKBACK = 3
# Booster influence by distance (1, 2, 3 tokens before the target)
BOOSTER_DECAY = (1.0, 0.95, 0.9)

_EDGE_PUNCTUATION = string.punctuation + "“”‘’"


def tokenize(raw_text: str) -> list[str]:
    """
    Split raw text on whitespace and strip edge punctuation, keeping case.

    Args:
        raw_text: Unmodified post text

    Returns:
        Non-empty tokens
    """
    tokens = (t.strip(_EDGE_PUNCTUATION) for t in raw_text.split())
    return [t for t in tokens if t]


def _is_negated(lowered: list[str], i: int, lexicon: Lexicon) -> bool:
    return any(lexicon.is_negator(lowered[j]) for j in range(max(0, i - LOOKBACK), i))


def _emphasized_directions(tokens: list[str], directions: list[float]) -> set[float]:
    """
    Directions whose ALL-CAPS sentiment tokens stand out from the text.

    A direction is emphasized when some token that is not upper-case is
    either neutral or pushes the score the same way. Appending a token can
    only switch on emphasis for its own direction.
    """
    emphasized: set[float] = set()
    for token, direction in zip(tokens, directions):
        if token.isupper():
            continue
        if direction == 0:
            return {1.0, -1.0}
        emphasized.add(direction)
    return emphasized


def normalize_score(total: float, alpha: float = DEFAULT_ALPHA) -> float:
    """Map an unbounded sum to [-1, 1] via S / sqrt(S^2 + alpha)."""
    if total == 0:
        return 0.0
    return float(np.clip(total / math.sqrt(total * total + alpha), -1.0, 1.0))


def token_valences(tokens: list[str], lexicon: Lexicon) -> list[float]:
    """
    Adjusted valence per token (0 for tokens outside the lexicon).

    ALL-CAPS emphasis applies to a token (and to ALL-CAPS boosters before
    it) when the text also holds non-capitalized context; the context must
    be neutral or lean the same way as the token's negation-adjusted valence.

    Args:
        tokens: Case-preserving tokens
        lexicon: Valence lexicon

    Returns:
        One adjusted valence per token
    """
    lowered = [t.lower() for t in tokens]
    bases: list[Optional[float]] = []
    directions: list[float] = []
    for i, low in enumerate(lowered):
        base = lexicon.valence(low)
        if base is None or low in lexicon.boosters:
            bases.append(None)
            directions.append(0.0)
            continue
        bases.append(base)
        flip = -1.0 if _is_negated(lowered, i, lexicon) else 1.0
        directions.append(float(np.sign(base)) * flip)
    emphasized = _emphasized_directions(tokens, directions)

    valences = []
    for i, (token, base) in enumerate(zip(tokens, bases)):
        if base is None:
            valences.append(0.0)
            continue
        sign = float(np.sign(base))
        emphasis = directions[i] != 0 and directions[i] in emphasized
        value = base
        if emphasis and token.isupper():
            value += sign * CAPS_INCREMENT

        for distance in range(1, min(LOOKBACK, i) + 1):
            j = i - distance
            increment = lexicon.boosters.get(lowered[j])
            if increment is None:
                continue
            if emphasis and tokens[j].isupper():
                # ALL-CAPS modifiers, dampeners included, push toward the valence
                increment += CAPS_INCREMENT
            value += sign * increment * BOOSTER_DECAY[distance - 1]

        if directions[i] != sign:
            value *= NEGATION_SCALAR
        valences.append(value)
    return valences


def compound_sentiment(raw_text: str, lexicon: Lexicon, alpha: float = DEFAULT_ALPHA) -> float:
    """
    Compute the compound sentiment of raw text.

    Args:
        raw_text: Unmodified post text (case and punctuation matter)
        lexicon: Valence lexicon
        alpha: Normalization constant (> 0)

    Returns:
        Compound score in [-1, 1]; 0 when no lexicon token occurs
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    total = math.fsum(token_valences(tokenize(raw_text), lexicon))
    if total != 0:
        emphasis = min(raw_text.count("!"), MAX_EXCLAMATIONS) * EXCLAMATION_INCREMENT
        total += emphasis if total > 0 else -emphasis
    return normalize_score(total, alpha)
