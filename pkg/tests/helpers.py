"""Builders for synthetic exports, variants and merged references used across the suite."""

from __future__ import annotations

import io
import random
import re
from collections.abc import Iterable, Mapping
from fractions import Fraction
from pathlib import Path
from typing import Optional

from rpys.models import CitedRefVariant, ImportWindow, MergedCR, SourceRecord
from rpys.parser import write_wos_records

FIXTURES_DIR = Path(__file__).parent / "fixtures"

ALL_YEARS = ImportWindow(min_year=0, max_year=9999, include_missing_year=True)

_ANSI_RE = re.compile(r"\x1b\[[0-9;]*m")


def strip_ansi(text: str) -> str:
    return _ANSI_RE.sub("", text)


def record(
    record_id: str,
    year: Optional[int],
    refs: Iterable[str],
    doc_type: Optional[str] = "Article",
) -> SourceRecord:
    """Shorthand for a :class:`SourceRecord`."""
    return SourceRecord(
        record_id=record_id, citing_year=year, cited_refs=tuple(refs), doc_type=doc_type
    )


def wos_text(records: Iterable[SourceRecord]) -> str:
    """Serialise *records* as a WoS tagged export."""
    buffer = io.StringIO()
    write_wos_records(records, buffer)
    return buffer.getvalue()


def write_wos(path: Path, records: Iterable[SourceRecord]) -> Path:
    path.write_text(wos_text(records), encoding="utf-8")
    return path


def variant(
    raw: str,
    counts: Optional[Mapping[int, int]] = None,
    *,
    author: Optional[str] = None,
    rpy: Optional[int] = 2000,
    source: str = "",
    volume: Optional[str] = None,
    page: Optional[str] = None,
    doi: Optional[str] = None,
) -> CitedRefVariant:
    """A variant with explicit fields; the author defaults to *raw*."""
    return CitedRefVariant(
        raw=raw,
        author=raw if author is None else author,
        rpy=rpy,
        source=source,
        volume=volume,
        page=page,
        doi=doi,
        counts_by_year=dict(counts or {}),
    )


def merged(raw: str, counts: Mapping[int, int], rpy: Optional[int] = 2000) -> MergedCR:
    """A single-member merged reference with the given per-year counts."""
    return MergedCR(
        canonical_raw=raw,
        rpy=rpy,
        member_count=1,
        n_cr=sum(counts.values()),
        counts_by_year=dict(counts),
    )


def landmark_records(
    years: range = range(2000, 2005),
    background: int = 8,
) -> list[SourceRecord]:
    """Synthetic corpus with one reference cited far more often than the rest.

    Every citing year has *background* records; record ``k`` cites its own
    background reference, records 1-5 also cite the landmark and records
    1-2 a runner-up. All references carry volume and page, so the linked
    ratio is 1.
    """
    records = []
    for year in years:
        for k in range(1, background + 1):
            refs = [f"AUTHOR{k} X, {1900 + k}, JOURNAL {k}, V{k}, P{k}"]
            if k <= 5:
                refs.append("LANDMARK L, 1950, CLASSIC BOOK, V1, P1")
            if k <= 2:
                refs.append("RUNNER R, 1960, SECOND BOOK, V2, P2")
            records.append(record(f"WOS:{year}{k:04d}", year, refs))
    return records


def edit_distance(a: str, b: str) -> int:
    """Textbook dynamic-programming Levenshtein distance."""
    previous = list(range(len(b) + 1))
    for i, char_a in enumerate(a, start=1):
        current = [i]
        for j, char_b in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,
                    current[j - 1] + 1,
                    previous[j - 1] + (char_a != char_b),
                )
            )
        previous = current
    return previous[-1]


def oracle_similarity(a: str, b: str) -> Fraction:
    """``1 - distance / max(len)`` from :func:`edit_distance`; two empty strings score 1."""
    longest = max(len(a), len(b))
    if longest == 0:
        return Fraction(1)
    return 1 - Fraction(edit_distance(a, b), longest)


def mutate(text: str, rng: random.Random, edits: int) -> str:
    """Apply up to *edits* random single-letter substitutions, insertions or deletions."""
    chars = list(text)
    for _ in range(edits):
        op = rng.choice("sid")
        pos = rng.randrange(len(chars) + 1)
        letter = rng.choice("ABCDEFGHIJKLMNOPQRSTUVWXYZ")
        if op == "i":
            chars.insert(pos, letter)
        elif pos < len(chars):
            if op == "s":
                chars[pos] = letter
            else:
                del chars[pos]
    return "".join(chars)
