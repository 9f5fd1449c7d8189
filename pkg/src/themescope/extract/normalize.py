"""Text normalization used by the mechanical provenance check.

Matching must survive the lossy edits models habitually make when copying
text: curly quotes, long dashes, collapsed whitespace, case changes. It
must NOT survive word substitutions, so nothing here touches letters.
"""

from __future__ import annotations

import unicodedata

_CHAR_MAP = str.maketrans(
    {
        "‘": "'",  # left single quote
        "’": "'",  # right single quote
        "‚": "'",
        "′": "'",
        "“": '"',  # left double quote
        "”": '"',  # right double quote
        "„": '"',
        "″": '"',
        "‐": "-",
        "‑": "-",
        "‒": "-",
        "–": "-",  # en dash
        "—": "-",  # em dash
        "―": "-",
        "−": "-",  # minus sign
    }
)


def normalize_for_match(text: str) -> str:
    """NFC, curly quotes/dashes to ASCII, whitespace runs to single spaces, casefold."""
    text = unicodedata.normalize("NFC", text)
    text = text.translate(_CHAR_MAP)
    text = " ".join(text.split())
    return text.casefold()
