"""Cited-reference x citing-year count matrix and its smoothing windows.

:class:`CitationMatrix` stores one dense row of citing-year counts per merged
reference. Window sums come from per-row prefix sums, so every
``windowed_count`` is two lookups and a whole citing-year column is one
vectorised subtraction.

Windows are clipped at the corpus boundaries: for year ``y`` and half-width
``r`` the window is ``[max(y - r, py_min), min(y + r, py_max)]``.

The matrix can be serialised into a small versioned binary layout
(``RPYSMX1\\0`` magic, little-endian, length-prefixed) used by the on-disk
cache.
"""

from __future__ import annotations

import struct
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from rpys.exceptions import CorpusError
from rpys.models import ImportWindow, MergedCR

MATRIX_MAGIC = b"RPYSMX1\0"

_HEADER = struct.Struct("<iiI")
_LENGTH = struct.Struct("<I")
_ROW = struct.Struct("<iII")
_CELL = struct.Struct("<iI")
_NO_YEAR = -(2**31)

RowRef = Union[MergedCR, int]


@dataclass(frozen=True, eq=False)
class CitationMatrix:
    """Immutable count structure over merged references and citing years.

    Attributes:
        rows: Merged references in pipeline order.
        py_min: First citing year of the range (inclusive).
        py_max: Last citing year of the range (inclusive).
        counts: ``int64`` array of shape ``(len(rows), py_max - py_min + 1)``.
        totals: Citing year -> occurrences in that year.
        distinct: Citing year -> number of rows cited in that year.
    """

    rows: tuple[MergedCR, ...]
    py_min: int
    py_max: int
    counts: np.ndarray
    totals: dict[int, int]
    distinct: dict[int, int]
    _prefix: np.ndarray = field(repr=False, compare=False)
    _index: dict[str, int] = field(repr=False, compare=False)

    @property
    def years(self) -> range:
        return range(self.py_min, self.py_max + 1)

    def __len__(self) -> int:
        return len(self.rows)

    def row_of(self, cr: RowRef) -> int:
        """Row index of a merged reference (or pass an index through)."""
        if isinstance(cr, int):
            return cr
        try:
            return self._index[cr.canonical_raw]
        except KeyError:
            raise KeyError(f"reference not in matrix: {cr.canonical_raw!r}") from None

    def window_bounds(self, year: int, r: int) -> tuple[int, int]:
        """Column slice ``[lo, hi)`` of the clipped window around *year*."""
        lo = min(max(year - r, self.py_min), self.py_max + 1) - self.py_min
        hi = min(year + r, self.py_max) - self.py_min + 1
        return lo, max(lo, hi)

    def window_column(self, year: int, r: int) -> np.ndarray:
        """Windowed counts of every row for one citing year."""
        lo, hi = self.window_bounds(year, r)
        return self._prefix[:, hi] - self._prefix[:, lo]


def _year_range(py_range: Union[ImportWindow, range, tuple[int, int]]) -> tuple[int, int]:
    if isinstance(py_range, ImportWindow):
        return py_range.min_year, py_range.max_year
    if isinstance(py_range, range):
        return py_range.start, py_range.stop - 1
    return py_range[0], py_range[1]


def build_matrix(
    merged: Sequence[MergedCR],
    py_range: Union[ImportWindow, range, tuple[int, int]],
) -> CitationMatrix:
    """Build the count matrix for *merged* over the citing years of *py_range*.

    Counts outside the range are dropped.

    Raises:
        CorpusError: *merged* is empty ("empty corpus").
    """
    if not merged:
        raise CorpusError("empty corpus")
    py_min, py_max = _year_range(py_range)
    width = py_max - py_min + 1
    counts = np.zeros((len(merged), width), dtype=np.int64)
    for row, item in enumerate(merged):
        for year, count in item.counts_by_year.items():
            if py_min <= year <= py_max:
                counts[row, year - py_min] = count

    prefix = np.zeros((len(merged), width + 1), dtype=np.int64)
    prefix[:, 1:] = np.cumsum(counts, axis=1)

    column_totals = counts.sum(axis=0)
    column_distinct = np.count_nonzero(counts, axis=0)
    years = range(py_min, py_max + 1)
    return CitationMatrix(
        rows=tuple(merged),
        py_min=py_min,
        py_max=py_max,
        counts=counts,
        totals={year: int(column_totals[i]) for i, year in enumerate(years)},
        distinct={year: int(column_distinct[i]) for i, year in enumerate(years)},
        _prefix=prefix,
        _index={item.canonical_raw: row for row, item in enumerate(merged)},
    )


def windowed_count(matrix: CitationMatrix, cr: RowRef, year: int, r: int) -> int:
    """Occurrences of *cr* over the clipped window ``[year - r, year + r]``."""
    row = matrix.row_of(cr)
    lo, hi = matrix.window_bounds(year, r)
    return int(matrix._prefix[row, hi] - matrix._prefix[row, lo])


def windowed_population(matrix: CitationMatrix, year: int, r: int) -> tuple[int, int]:
    """Return ``(n, total)`` for the window around *year*.

    ``n`` counts rows with a positive windowed count, ``total`` sums the
    windowed counts of all rows.
    """
    column = matrix.window_column(year, r)
    return int(np.count_nonzero(column)), int(column.sum())


# --- Binary layout ---


def encode_matrix(matrix: CitationMatrix) -> bytes:
    """Serialise *matrix* into the ``RPYSMX1`` layout.

    Layout: magic, ``(py_min, py_max, n_rows)``, then per row the UTF-8
    canonical string (length-prefixed), ``(rpy, member_count, n_cr)`` and a
    length-prefixed list of ``(year, count)`` cells.
    """
    parts = [MATRIX_MAGIC, _HEADER.pack(matrix.py_min, matrix.py_max, len(matrix.rows))]
    for item in matrix.rows:
        raw = item.canonical_raw.encode("utf-8")
        parts.append(_LENGTH.pack(len(raw)))
        parts.append(raw)
        rpy = _NO_YEAR if item.rpy is None else item.rpy
        parts.append(_ROW.pack(rpy, item.member_count, item.n_cr))
        cells = sorted(item.counts_by_year.items())
        parts.append(_LENGTH.pack(len(cells)))
        parts.extend(_CELL.pack(year, count) for year, count in cells)
    return b"".join(parts)


def decode_matrix(data: bytes) -> CitationMatrix:
    """Rebuild a :class:`CitationMatrix` from :func:`encode_matrix` output.

    Raises:
        ValueError: Wrong magic, truncated data or trailing bytes.
    """
    if not data.startswith(MATRIX_MAGIC):
        raise ValueError("not an RPYSMX1 matrix")
    view = memoryview(data)
    offset = len(MATRIX_MAGIC)

    def take(layout: struct.Struct) -> tuple[int, ...]:
        nonlocal offset
        values = layout.unpack_from(view, offset)
        offset += layout.size
        return values

    try:
        py_min, py_max, n_rows = take(_HEADER)
        rows: list[MergedCR] = []
        for _ in range(n_rows):
            (length,) = take(_LENGTH)
            if offset + length > len(data):
                raise ValueError("truncated matrix data")
            raw = bytes(view[offset:offset + length]).decode("utf-8")
            offset += length
            rpy, member_count, n_cr = take(_ROW)
            (n_cells,) = take(_LENGTH)
            counts = dict(take(_CELL) for _ in range(n_cells))
            rows.append(
                MergedCR(
                    canonical_raw=raw,
                    rpy=None if rpy == _NO_YEAR else rpy,
                    member_count=member_count,
                    n_cr=n_cr,
                    counts_by_year=counts,
                )
            )
    except struct.error as exc:
        raise ValueError(f"truncated matrix data: {exc}") from exc

    if offset != len(data):
        raise ValueError(f"{len(data) - offset} trailing bytes after matrix data")
    return build_matrix(rows, (py_min, py_max))
