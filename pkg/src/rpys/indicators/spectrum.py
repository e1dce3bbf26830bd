"""RPYS spectrum: cited-reference occurrences per reference publication year.

Each year's deviation is its count minus the median of the counts in the
window ``[rpy - m, rpy + m]``, clipped at the first and last RPY present in
the data. Years between those extremes with no references count as zero.
Peaks in the deviation mark candidate landmark years.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from fractions import Fraction
from typing import Union

from rpys.indicators.matrix import CitationMatrix
from rpys.models import MergedCR, RpySpectrumRow


def median(values: Sequence[int]) -> Fraction:
    """Exact median; an even-length sequence averages its two central values."""
    if not values:
        raise ValueError("median of an empty sequence")
    ordered = sorted(values)
    middle = len(ordered) // 2
    if len(ordered) % 2:
        return Fraction(ordered[middle])
    return Fraction(ordered[middle - 1] + ordered[middle], 2)


def rpy_counts(rows: Iterable[MergedCR]) -> dict[int, int]:
    """N_CR summed per reference publication year; undated references are left out."""
    counts: Counter[int] = Counter()
    for row in rows:
        if row.rpy is not None:
            counts[row.rpy] += row.n_cr
    return dict(counts)


def rpys_spectrum(
    matrix: Union[CitationMatrix, Sequence[MergedCR]],
    median_range: int,
) -> list[RpySpectrumRow]:
    """Compute the RPYS spectrum over the contiguous RPY span of the data.

    Args:
        matrix: Citation matrix (or the merged references directly).
        median_range: Half-width ``m`` of the sliding median window.

    Returns:
        One row per year from the smallest to the largest RPY, in order.
    """
    rows = matrix.rows if isinstance(matrix, CitationMatrix) else matrix
    counts = rpy_counts(rows)
    if not counts:
        return []
    first, last = min(counts), max(counts)
    series = [counts.get(year, 0) for year in range(first, last + 1)]

    spectrum: list[RpySpectrumRow] = []
    for i, value in enumerate(series):
        window = series[max(0, i - median_range): i + median_range + 1]
        spectrum.append(
            RpySpectrumRow(rpy=first + i, n_cr_year=value, median_dev=value - median(window))
        )
    return spectrum
