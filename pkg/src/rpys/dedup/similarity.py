"""Pairwise comparison of cited-reference variants.

Two variants are compared on a *comparison key*: author and source
concatenated, uppercased, with all whitespace removed. Volume, page and DOI
never enter the key; they act as separate equality gates in
:func:`pair_matches`.

Similarity is the normalised Levenshtein similarity
``1 - distance / max(len(a), len(b))``, computed exactly as a
:class:`~fractions.Fraction` so threshold decisions do not depend on
floating-point rounding.
"""

from __future__ import annotations

import re
from fractions import Fraction

from rapidfuzz.distance import Levenshtein

from rpys.models import CitedRefVariant, ClusterConfig

_WHITESPACE_RE = re.compile(r"\s+")


def comparison_key(variant: CitedRefVariant) -> str:
    """Return the string two variants are compared on."""
    return _WHITESPACE_RE.sub("", f"{variant.author}{variant.source}".upper())


def key_similarity(a: str, b: str) -> Fraction:
    """Normalised Levenshtein similarity of two keys.

    Two empty keys are identical (``1``); an empty key against a non-empty
    one scores ``0``.
    """
    longest = max(len(a), len(b))
    if longest == 0:
        return Fraction(1)
    return Fraction(longest - Levenshtein.distance(a, b), longest)


def similarity(a: CitedRefVariant, b: CitedRefVariant) -> Fraction:
    """Similarity of two variants in ``[0, 1]``; symmetric, and 1 for a variant with itself."""
    return key_similarity(comparison_key(a), comparison_key(b))


def max_distance(longest: int, threshold: Fraction) -> int:
    """Largest edit distance that still reaches *threshold* for keys of length *longest*.

    ``(longest - d) / longest >= t`` holds exactly when
    ``d <= floor((1 - t) * longest)``.
    """
    return int((1 - threshold) * longest)


def gates_agree(a: CitedRefVariant, b: CitedRefVariant, cfg: ClusterConfig) -> bool:
    """Check the enabled field gates.

    A gate only rejects when both values are present and differ; a missing
    value on either side is compatible.
    """
    if cfg.require_volume and a.volume and b.volume and a.volume != b.volume:
        return False
    if cfg.require_page and a.page and b.page and a.page != b.page:
        return False
    if cfg.require_doi and a.doi and b.doi and a.doi.lower() != b.doi.lower():
        return False
    return True


def keys_match(a: str, b: str, threshold: Fraction) -> bool:
    """Return True when the similarity of keys *a* and *b* reaches *threshold*."""
    longest = max(len(a), len(b))
    if longest == 0:
        return True
    limit = max_distance(longest, threshold)
    if abs(len(a) - len(b)) > limit:
        return False
    return Levenshtein.distance(a, b, score_cutoff=limit) <= limit


def pair_matches(a: CitedRefVariant, b: CitedRefVariant, cfg: ClusterConfig) -> bool:
    """Decide whether two variants of the same RPY belong together.

    True iff ``similarity(a, b) >= cfg.threshold`` and every enabled gate
    (volume, page, DOI) agrees.
    """
    if not gates_agree(a, b, cfg):
        return False
    return keys_match(comparison_key(a), comparison_key(b), cfg.threshold_fraction)
