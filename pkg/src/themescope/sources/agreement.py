"""Cohen's kappa between two labelers over the same items."""

from __future__ import annotations

from collections import Counter
from typing import Hashable, Sequence

from themescope.errors import ArgumentError


def cohen_kappa(labels_a: Sequence[Hashable], labels_b: Sequence[Hashable]) -> float:
    """Chance-corrected agreement: (p_o - p_e) / (1 - p_e).

    p_o is the observed agreement fraction; p_e is the chance agreement
    implied by each labeler's marginal category frequencies. When p_e = 1
    (both labelers constant on one category) the statistic is undefined, so
    we return 1.0 on perfect agreement and 0.0 otherwise.
    """
    if len(labels_a) != len(labels_b):
        raise ArgumentError(
            f"label vectors differ in length: {len(labels_a)} vs {len(labels_b)}"
        )
    n = len(labels_a)
    if n == 0:
        raise ArgumentError("label vectors must be non-empty")

    p_o = sum(a == b for a, b in zip(labels_a, labels_b)) / n
    freq_a = Counter(labels_a)
    freq_b = Counter(labels_b)
    p_e = sum(freq_a[cat] * freq_b.get(cat, 0) for cat in freq_a) / (n * n)

    if p_e == 1.0:
        return 1.0 if p_o == 1.0 else 0.0
    return (p_o - p_e) / (1.0 - p_e)
