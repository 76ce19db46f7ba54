"""Small text helpers shared by the lexicon, number words, and normalizer."""

from __future__ import annotations

import unicodedata


def strip_accents(text: str) -> str:
    """Drop combining marks: 'março' -> 'marco', 'décimo' -> 'decimo'."""
    decomposed = unicodedata.normalize("NFD", text)
    stripped = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    return unicodedata.normalize("NFC", stripped)


def fold_key(text: str) -> str:
    """Accent-stripped casefolded lookup key for lexicon matching."""
    return strip_accents(text).casefold()
