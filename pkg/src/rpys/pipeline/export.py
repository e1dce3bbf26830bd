"""CSV export of indicator rows, the RPYS spectrum and the cluster audit dump.

Files are UTF-8 with RFC-4180 quoting (only fields containing a comma,
quote or line break are quoted) and LF line endings, exactly one LF after
the last row. Every file is written through
:func:`~rpys.config.atomic_write`, so a failed export leaves no partial
file behind.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Iterable, Sequence
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from rpys.config import atomic_write
from rpys.dedup import format_cluster_dump
from rpys.exceptions import InputError
from rpys.models import IndicatorRow, MergedCR, RpySpectrumRow

BASE_HEADER = ("CR", "RPY", "N_CR", "N_TOP0_1+")
SPECTRUM_HEADER = ("RPY", "N_CR", "MEDIAN_DEV")


def level_label(p: float) -> str:
    """Column label of percentile level *p* (``0.1 -> "10"``, ``0.001 -> "0_1"``)."""
    percent = (Decimal(str(p)) * 100).normalize()
    return format(percent, "f").replace(".", "_")


def csv_header(levels: Sequence[float] = ()) -> list[str]:
    return [*BASE_HEADER, *(f"N_TOP{level_label(level)}+" for level in levels)]


def format_fraction(value: Fraction) -> str:
    """Render an integer or half-integer exactly (``40``, ``12.5``, ``-0.5``)."""
    if value.denominator == 1:
        return str(value.numerator)
    return format(Decimal(value.numerator) / Decimal(value.denominator), "f")


def spectrum_path(path: Path) -> Path:
    """Companion spectrum file of a CSV export (``out.csv -> out.rpys.csv``)."""
    if path.suffix.lower() == ".csv":
        return path.with_suffix(".rpys.csv")
    return path.with_name(path.name + ".rpys.csv")


def _writer(buffer: io.StringIO) -> Any:
    return csv.writer(buffer, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)


def render_csv(
    rows: Iterable[IndicatorRow],
    levels: Sequence[float] = (),
    p: Optional[float] = None,
) -> str:
    """Render indicator rows; *p* adds a leading ``# p=<value>`` comment line."""
    buffer = io.StringIO()
    if p is not None:
        buffer.write(f"# p={p}\n")
    writer = _writer(buffer)
    writer.writerow(csv_header(levels))
    for row in rows:
        writer.writerow(
            [row.cr, "" if row.rpy is None else row.rpy, row.n_cr, row.n_top, *row.extra_levels]
        )
    return buffer.getvalue()


def render_spectrum_csv(spectrum: Iterable[RpySpectrumRow]) -> str:
    buffer = io.StringIO()
    writer = _writer(buffer)
    writer.writerow(SPECTRUM_HEADER)
    for row in spectrum:
        writer.writerow([row.rpy, row.n_cr_year, format_fraction(row.median_dev)])
    return buffer.getvalue()


def _write(path: Path, text: str) -> None:
    try:
        atomic_write(path, text)
    except OSError as exc:
        raise InputError(exc.strerror or str(exc), path=str(path)) from exc


def export_csv(
    rows: Sequence[IndicatorRow],
    path: Path,
    spectrum: Optional[Sequence[RpySpectrumRow]] = None,
    levels: Sequence[float] = (),
    p: Optional[float] = None,
) -> list[Path]:
    """Write the indicator CSV and, when *spectrum* is given, its ``.rpys.csv`` companion.

    Returns:
        The paths written, main file first.

    Raises:
        InputError: A file cannot be written; no partial file remains and
            the main file is removed again if the spectrum write fails.
    """
    _write(path, render_csv(rows, levels, p))
    written = [path]
    if spectrum is not None:
        companion = spectrum_path(path)
        try:
            _write(companion, render_spectrum_csv(spectrum))
        except InputError:
            path.unlink(missing_ok=True)
            raise
        written.append(companion)
    return written


def export_spectrum_csv(spectrum: Sequence[RpySpectrumRow], path: Path) -> Path:
    """Write a standalone spectrum CSV to *path*."""
    _write(path, render_spectrum_csv(spectrum))
    return path


def write_cluster_dump(merged: Iterable[MergedCR], path: Path) -> Path:
    """Write the cluster audit dump, one ``rpy<TAB>member_count<TAB>canonical_raw`` line per cluster."""
    lines = list(format_cluster_dump(merged))
    _write(path, "".join(f"{line}\n" for line in lines))
    return path
