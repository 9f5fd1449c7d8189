"""Mechanical check that an extracted quote exists verbatim in its source."""

from __future__ import annotations

from themescope.extract.normalize import normalize_for_match


def verify_provenance(quote_text: str, source_text: str) -> bool:
    """True iff the normalized quote is a contiguous substring of the normalized source."""
    needle = normalize_for_match(quote_text)
    if not needle:
        return False
    return needle in normalize_for_match(source_text)
