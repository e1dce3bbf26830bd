"""Stream-parse Web of Science tagged-field plain-text exports.

A WoS export is a sequence of records. Each record starts with a ``PT`` line
and ends with an ``ER`` line; the file ends with ``EF``. Every field line
begins with a two-character tag followed by a space, and continuation lines
begin with three spaces::

    FN Clarivate Analytics Web of Science
    VR 1.0
    PT J
    UT WOS:000123456700001
    DT Article
    PY 1995
    CR WHITE HD, 1981, J AM SOC INFORM SCI, V32, P163
       GIDDENS A, 1984, CONSTITUTION SOC
    ER

    EF

Only ``PT``, ``PY``, ``DT``, ``UT``, ``CR``, ``ER`` and ``EF`` are consumed;
all other tags and their continuation lines are skipped. Each ``CR`` line is
one raw cited reference.

The parser works line by line on a binary stream and holds at most one
record in memory. Bytes are decoded as UTF-8 with replacement, so
Latin-1 contamination never aborts an import. A record cut off by end of
file, or by a new ``PT`` before its ``ER``, is dropped and counted in
:attr:`ParseStats.broken_records`.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator
from functools import lru_cache
from pathlib import Path
from typing import BinaryIO, Optional, TextIO

from rpys.exceptions import InputError
from rpys.models import ImportWindow, ParseStats, SourceRecord
from rpys.parser.cited_ref import parse_cr

_CONSUMED_TAGS = frozenset({"PY", "DT", "UT", "CR"})
_YEAR_RE = re.compile(r"\d{4}")
_CONTINUATION = "   "
_CR_CACHE_SIZE = 1 << 16


class WosStreamParser:
    """Single-pass parser turning a WoS byte stream into :class:`SourceRecord` objects.

    One instance parses one stream; several files can be parsed
    concurrently by independent instances. Counters accumulate in
    :attr:`stats`.

    Args:
        py_window: Citing-year window; records outside it are skipped.
        rpy_window: Reference-year window; references outside it are dropped.
        max_cr: Keep only the first *max_cr* references of each record
            (``0`` keeps all).
        doc_type_filter: When set, only records whose ``DT`` equals it
            (case-insensitively) are admitted.
        source_name: Name used in synthetic record ids and error messages.
    """

    def __init__(
        self,
        py_window: ImportWindow,
        rpy_window: ImportWindow,
        max_cr: int = 0,
        doc_type_filter: Optional[str] = None,
        source_name: str = "<stream>",
    ) -> None:
        if max_cr < 0:
            raise ValueError("max_cr must be >= 0")
        self._py_window = py_window
        self._max_cr = max_cr
        self._doc_type = doc_type_filter.casefold() if doc_type_filter else None
        self._source_name = source_name
        self.stats = ParseStats()

        # Bounded: WoS exports repeat popular references across records.
        @lru_cache(maxsize=_CR_CACHE_SIZE)
        def _admits(raw: str) -> bool:
            return parse_cr(raw, rpy_window) is not None

        self._admits_cr = _admits

    def parse(self, stream: BinaryIO) -> Iterator[SourceRecord]:
        """Yield admitted records from *stream* in file order.

        Raises:
            InputError: If reading the stream fails; the message carries
                the byte offset reached.
        """
        offset = 0
        fields: Optional[dict[str, list[str]]] = None
        current_tag: Optional[str] = None
        record_offset = 0

        try:
            for line_bytes in stream:
                line_offset = offset
                offset += len(line_bytes)
                self.stats.bytes_read += len(line_bytes)
                line = line_bytes.decode("utf-8", errors="replace").rstrip("\r\n")
                if line_offset == 0 and line.startswith("\ufeff"):
                    line = line[1:]
                if not line.strip():
                    continue

                if line.startswith(_CONTINUATION):
                    if fields is not None and current_tag is not None:
                        fields[current_tag].append(line.strip())
                    continue

                tag = line[:2]
                value = line[3:].strip()

                if tag == "PT":
                    if fields is not None:
                        self.stats.broken_records += 1
                    fields = {}
                    current_tag = None
                    record_offset = line_offset
                elif tag == "ER":
                    if fields is not None:
                        record = self._finish(fields, record_offset)
                        if record is not None:
                            yield record
                    fields = None
                    current_tag = None
                elif tag == "EF":
                    break
                elif fields is not None and tag in _CONSUMED_TAGS:
                    fields.setdefault(tag, []).append(value)
                    current_tag = tag
                else:
                    current_tag = None
        except OSError as exc:
            raise InputError(f"read failed: {exc}", path=self._source_name, offset=offset) from exc

        if fields is not None:
            self.stats.broken_records += 1

    def _finish(self, fields: dict[str, list[str]], record_offset: int) -> Optional[SourceRecord]:
        """Apply windows and filters to one complete record."""
        self.stats.records_read += 1

        citing_year = _parse_year(_first(fields, "PY"))
        if not self._py_window.admits(citing_year):
            self.stats.records_skipped += 1
            return None

        doc_type = _first(fields, "DT")
        if self._doc_type is not None and (doc_type or "").casefold() != self._doc_type:
            self.stats.records_skipped += 1
            return None

        refs = [raw for raw in fields.get("CR", []) if raw]
        if self._max_cr:
            refs = refs[: self._max_cr]
        admitted = tuple(raw for raw in refs if self._admits_cr(raw))

        record_id = _first(fields, "UT") or f"{self._source_name}:{record_offset}"
        self.stats.records_admitted += 1
        return SourceRecord(
            record_id=record_id,
            citing_year=citing_year,
            cited_refs=admitted,
            doc_type=doc_type,
        )


def _first(fields: dict[str, list[str]], tag: str) -> Optional[str]:
    values = fields.get(tag)
    if not values:
        return None
    return values[0] or None


def _parse_year(value: Optional[str]) -> Optional[int]:
    if value is not None and _YEAR_RE.fullmatch(value):
        return int(value)
    return None


def parse_wos_stream(
    stream: BinaryIO,
    py_window: ImportWindow,
    rpy_window: ImportWindow,
    max_cr: int = 0,
    doc_type_filter: Optional[str] = None,
    stats: Optional[ParseStats] = None,
    source_name: str = "<stream>",
) -> Iterator[SourceRecord]:
    """Parse a WoS export stream. See :class:`WosStreamParser`.

    Args:
        stream: Binary stream positioned at the start of the export.
        py_window: Citing-year window.
        rpy_window: Reference-year window.
        max_cr: Per-record reference cap (``0`` = no cap).
        doc_type_filter: Optional ``DT`` value to restrict to.
        stats: Counter object updated while parsing, for callers that need
            skip and broken-record counts.
        source_name: Name used in synthetic ids and error messages.

    Returns:
        An iterator of admitted records in file order.
    """
    parser = WosStreamParser(
        py_window,
        rpy_window,
        max_cr=max_cr,
        doc_type_filter=doc_type_filter,
        source_name=source_name,
    )
    if stats is not None:
        parser.stats = stats
    return parser.parse(stream)


def parse_wos_file(
    path: str | Path,
    py_window: ImportWindow,
    rpy_window: ImportWindow,
    max_cr: int = 0,
    doc_type_filter: Optional[str] = None,
    stats: Optional[ParseStats] = None,
) -> Iterator[SourceRecord]:
    """Open *path* and yield its admitted records.

    Raises:
        InputError: If the file cannot be opened or read.
    """
    file_path = Path(path)
    try:
        handle = open(file_path, "rb")
    except OSError as exc:
        raise InputError(f"cannot open input: {exc.strerror or exc}", path=str(file_path)) from exc
    with handle:
        yield from parse_wos_stream(
            handle,
            py_window,
            rpy_window,
            max_cr=max_cr,
            doc_type_filter=doc_type_filter,
            stats=stats,
            source_name=file_path.name,
        )


def write_wos_records(records: Iterable[SourceRecord], stream: TextIO) -> int:
    """Serialise *records* in tagged WoS format.

    Every record is written with a ``UT`` line, so re-parsing the output
    reproduces the same records (synthetic ids included).

    Returns:
        The number of records written.
    """
    stream.write("FN Clarivate Analytics Web of Science\nVR 1.0\n")
    written = 0
    for record in records:
        stream.write("PT J\n")
        stream.write(f"UT {record.record_id}\n")
        if record.doc_type is not None:
            stream.write(f"DT {record.doc_type}\n")
        if record.citing_year is not None:
            stream.write(f"PY {record.citing_year}\n")
        for index, raw in enumerate(record.cited_refs):
            prefix = "CR " if index == 0 else _CONTINUATION
            stream.write(f"{prefix}{raw}\n")
        stream.write("ER\n\n")
        written += 1
    stream.write("EF\n")
    return written
