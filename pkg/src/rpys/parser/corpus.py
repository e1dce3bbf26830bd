"""Aggregate streamed citing records into a table of cited-reference variants.

The table is keyed by the exact raw CR string. Each distinct string is
parsed once, on first sight, and from then on only its per-citing-year
counter moves. Memory therefore grows with the number of distinct variants,
never with the number of records.

:func:`import_files` is the import stage of the pipeline: it parses several
export files concurrently (one :class:`~rpys.parser.wos.WosStreamParser`
per file) and folds the per-file tables together in input order.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional

from rpys.models import CitedRefVariant, CorpusStats, ImportWindow, ParseStats, SourceRecord
from rpys.parser.cited_ref import parse_cr
from rpys.parser.wos import parse_wos_file


class VariantTable:
    """Occurrence counts of every distinct raw CR string, by citing year.

    Records without a citing year (admitted only when the PY window includes
    missing years) are counted as records, but their references cannot be
    placed in a citing year and are tallied in :attr:`undated_occurrences`
    instead.

    Args:
        rpy_window: Window used to parse newly seen CR strings.
    """

    def __init__(self, rpy_window: ImportWindow) -> None:
        self._rpy_window = rpy_window
        self._variants: dict[str, CitedRefVariant] = {}
        self.records = 0
        self.occurrences = 0
        self.undated_occurrences = 0
        self._py_min: Optional[int] = None
        self._py_max: Optional[int] = None

    def __len__(self) -> int:
        return len(self._variants)

    def add_record(self, record: SourceRecord) -> None:
        """Count every reference of *record* under its citing year."""
        self.records += 1
        year = record.citing_year
        if year is None:
            self.undated_occurrences += len(record.cited_refs)
            return
        if self._py_min is None or year < self._py_min:
            self._py_min = year
        if self._py_max is None or year > self._py_max:
            self._py_max = year

        for raw in record.cited_refs:
            variant = self._variants.get(raw)
            if variant is None:
                variant = parse_cr(raw, self._rpy_window)
                if variant is None:
                    continue
                self._variants[raw] = variant
            variant.add_occurrence(year)
            self.occurrences += 1

    def add_records(self, records: Iterable[SourceRecord]) -> None:
        """Consume *records* one at a time."""
        for record in records:
            self.add_record(record)

    def absorb(self, other: "VariantTable") -> None:
        """Fold *other*'s counts into this table."""
        self.records += other.records
        self.occurrences += other.occurrences
        self.undated_occurrences += other.undated_occurrences
        for year in (other._py_min, other._py_max):
            if year is None:
                continue
            if self._py_min is None or year < self._py_min:
                self._py_min = year
            if self._py_max is None or year > self._py_max:
                self._py_max = year
        for raw, variant in other._variants.items():
            mine = self._variants.get(raw)
            if mine is None:
                self._variants[raw] = variant
                continue
            for year, count in variant.counts_by_year.items():
                mine.add_occurrence(year, count)

    def variants(self) -> list[CitedRefVariant]:
        """All variants, in first-seen order."""
        return list(self._variants.values())

    def stats(self) -> CorpusStats:
        """Summary figures for the ``info`` report."""
        years = [v.rpy for v in self._variants.values() if v.rpy is not None]
        return CorpusStats(
            records=self.records,
            cr_occurrences=self.occurrences,
            distinct_variants=len(self._variants),
            py_min=self._py_min,
            py_max=self._py_max,
            rpy_min=min(years) if years else None,
            rpy_max=max(years) if years else None,
        )


def _import_one(
    path: Path,
    py_window: ImportWindow,
    rpy_window: ImportWindow,
    max_cr: int,
    doc_type_filter: Optional[str],
) -> tuple[VariantTable, ParseStats]:
    stats = ParseStats()
    table = VariantTable(rpy_window)
    table.add_records(
        parse_wos_file(
            path,
            py_window,
            rpy_window,
            max_cr=max_cr,
            doc_type_filter=doc_type_filter,
            stats=stats,
        )
    )
    return table, stats


def import_files(
    paths: Sequence[Path],
    py_window: ImportWindow,
    rpy_window: ImportWindow,
    max_cr: int = 0,
    doc_type_filter: Optional[str] = None,
    threads: int = 1,
) -> tuple[VariantTable, ParseStats]:
    """Parse and aggregate every file in *paths*.

    Files are parsed concurrently on up to *threads* workers; results are
    combined in the order of *paths* so the outcome does not depend on
    scheduling.

    Returns:
        The combined variant table and the summed parser counters.

    Raises:
        InputError: If any file cannot be read.
    """
    combined = VariantTable(rpy_window)
    totals = ParseStats()
    if not paths:
        return combined, totals

    workers = max(1, min(threads, len(paths)))
    if workers == 1:
        results = [
            _import_one(path, py_window, rpy_window, max_cr, doc_type_filter) for path in paths
        ]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_import_one, path, py_window, rpy_window, max_cr, doc_type_filter)
                for path in paths
            ]
            results = [future.result() for future in futures]

    for table, stats in results:
        combined.absorb(table)
        totals.absorb(stats)
    return combined, totals
