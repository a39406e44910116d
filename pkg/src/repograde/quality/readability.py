"""Deterministic readability scoring for documentation text.

Flesch reading ease: 206.835 - 1.015 * (words / sentences)
- 84.6 * (syllables / word).  Syllables come from a vowel-group
heuristic documented on :func:`count_syllables`; it is intentionally
simple and reproducible rather than dictionary-accurate.
"""

from __future__ import annotations

import re

_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")
_WORD_RE = re.compile(r"[A-Za-z']+")
_SENTENCE_END_RE = re.compile(r"[.!?]+")


def count_syllables(word: str) -> int:
    """Count syllables as vowel groups (a e i o u y).

    A trailing silent 'e' is dropped unless the word ends in 'le'
    (e.g. "table") or dropping it would leave no syllable at all.
    Every word counts at least one syllable.
    """
    w = re.sub(r"[^a-z]", "", word.lower())
    if not w:
        return 0
    count = len(_VOWEL_GROUP_RE.findall(w))
    if w.endswith("e") and not w.endswith("le") and count > 1:
        count -= 1
    return max(1, count)


def flesch_reading_ease(text: str) -> float:
    """Raw Flesch reading ease of a prose passage (0 for empty text)."""
    words = _WORD_RE.findall(text)
    if not words:
        return 0.0
    sentences = max(1, len(_SENTENCE_END_RE.findall(text)))
    syllables = sum(count_syllables(w) for w in words)
    n_words = len(words)
    return (206.835
            - 1.015 * (n_words / sentences)
            - 84.6 * (syllables / n_words))
