"""Parse Web of Science cited-reference (CR) strings into structured fields.

A WoS CR line is a comma-separated list of segments in a conventional order::

    WHITE HD, 1981, JOURNAL OF THE AMERICAN SOCIETY FOR INFORMATION SCIENCE, V32, P163
    GIDDENS A, 1984, CONSTITUTION SOC
    MARKUS ML, 1983, COMMUNICATIONS OF THE ACM, V26, P430, DOI 10.1145/358141.358148

:func:`parse_cr` is total: arbitrary text never raises, unparseable fields
degrade to empty or ``None``, and only the RPY window can drop a reference.

:func:`linked_ratio` computes the share of CR occurrences that look resolvable
to an indexed record; corpora below the configured minimum are excluded from
analysis.
"""

from __future__ import annotations

import re
from collections.abc import Callable, Iterable
from fractions import Fraction
from typing import Optional

from rpys.exceptions import CorpusError
from rpys.models import CitedRefVariant, ImportWindow

_YEAR_RE = re.compile(r"\d{4}")
_VOLUME_RE = re.compile(r"V(\S+)")
_PAGE_RE = re.compile(r"P(\S+)")
_DOI_RE = re.compile(r"DOI\s+(\S.*)", re.IGNORECASE)

LinkedPredicate = Callable[[CitedRefVariant], bool]


def _as_year(segment: str) -> Optional[int]:
    """Return the year when *segment* is exactly four digits, else ``None``."""
    if _YEAR_RE.fullmatch(segment):
        return int(segment)
    return None


def _first_doi(value: str) -> Optional[str]:
    """First DOI of a ``DOI`` segment; WoS writes several as ``DOI [10.1/a, 10.1/b]``."""
    doi = value.strip().lstrip("[").rstrip("]").strip()
    return doi or None


def parse_cr(raw: str, rpy_window: ImportWindow) -> Optional[CitedRefVariant]:
    """Parse one raw CR string.

    * ``author`` is the first segment, trimmed.
    * ``rpy`` is the first segment consisting of exactly four digits.
    * ``source`` is the first segment after the author that is not a year.
    * ``volume`` / ``page`` / ``doi`` come from ``V<token>``, ``P<token>`` and
      ``DOI <token>`` segments after the source, in any order, stored
      without their prefixes.

    Args:
        raw: A single CR line as read from the export.
        rpy_window: Reference publication year window.

    Returns:
        The parsed variant with empty counts, or ``None`` when the year is
        missing (and missing years are excluded) or outside the window.
    """
    segments = [segment.strip() for segment in raw.split(",")]
    author = segments[0]

    rpy: Optional[int] = None
    for segment in segments:
        year = _as_year(segment)
        if year is not None:
            rpy = year
            break

    if not rpy_window.admits(rpy):
        return None

    source = ""
    source_index = len(segments)
    for index in range(1, len(segments)):
        if _as_year(segments[index]) is None:
            source = segments[index]
            source_index = index
            break

    volume: Optional[str] = None
    page: Optional[str] = None
    doi: Optional[str] = None
    for segment in segments[source_index + 1:]:
        if doi is None and (match := _DOI_RE.fullmatch(segment)):
            doi = _first_doi(match.group(1))
        elif volume is None and (match := _VOLUME_RE.fullmatch(segment)):
            volume = match.group(1)
        elif page is None and (match := _PAGE_RE.fullmatch(segment)):
            page = match.group(1)

    return CitedRefVariant(
        raw=raw,
        author=author,
        rpy=rpy,
        source=source,
        volume=volume,
        page=page,
        doi=doi,
    )


def is_linked(variant: CitedRefVariant) -> bool:
    """Default linkedness test: a DOI, or year, volume and page together."""
    if variant.doi:
        return True
    return variant.rpy is not None and bool(variant.volume) and bool(variant.page)


def linked_ratio(
    variants: Iterable[CitedRefVariant],
    linked_predicate: LinkedPredicate = is_linked,
) -> Fraction:
    """Share of CR occurrences satisfying *linked_predicate*.

    Each occurrence counts once, so a variant cited 40 times weighs 40 times
    as much as a variant cited once.

    Args:
        variants: Aggregated variants with their occurrence counts.
        linked_predicate: Decides whether a variant counts as linked.

    Returns:
        The exact ratio in ``[0, 1]``.

    Raises:
        CorpusError: If there are no occurrences at all.
    """
    linked = 0
    total = 0
    for variant in variants:
        count = variant.total_count
        total += count
        if count and linked_predicate(variant):
            linked += count
    if total == 0:
        raise CorpusError("no cited references")
    return Fraction(linked, total)
