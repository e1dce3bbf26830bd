"""Top-percentile membership test and the N_TOPp+ landmark indicator.

For one citing year the population is every merged reference with a positive
windowed count. Those counts are ranked in descending order and the
*threshold count* ``c`` is read at rank ``floor(1 + n * p)``. A reference is
*top* in that year when its windowed count is strictly greater than ``c`` and
strictly greater than the expected count, the mean ``total / n`` of the
window. N_TOPp+ counts the citing years in which a reference is top.

All decisions are exact: ``p`` is a :class:`~fractions.Fraction` of its
decimal text and the mean test is done as ``count * n > total`` in integers.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from rpys.indicators.matrix import CitationMatrix, RowRef, windowed_count
from rpys.models import ImportWindow, PercentileConfig, YearThreshold

Level = Union[Fraction, float, str]


def _as_fraction(p: Level) -> Fraction:
    if isinstance(p, Fraction):
        return p
    return Fraction(str(p))


def threshold_rank(n: int, p: Level) -> int:
    """1-based rank of the threshold count in a descending list of *n* counts.

    ``threshold_rank(10_000, 0.001) == 11``.

    Raises:
        ValueError: *n* is smaller than 1.
    """
    if n < 1:
        raise ValueError(f"population must be positive, got {n}")
    return math.floor(1 + n * _as_fraction(p))


def _select(column: np.ndarray, p: Fraction, year: int) -> YearThreshold:
    positive = column[column > 0]
    n = int(positive.size)
    total = int(positive.sum())
    if n == 0:
        return YearThreshold(year=year, n=0, total=0, threshold=None, expected=None)
    rank = threshold_rank(n, p)
    kth = n - rank
    threshold = int(np.partition(positive, kth)[kth])
    return YearThreshold(
        year=year, n=n, total=total, threshold=threshold, expected=Fraction(total, n)
    )


def year_threshold(matrix: CitationMatrix, year: int, cfg: PercentileConfig) -> YearThreshold:
    """Population, threshold count and expected count of one citing year."""
    column = matrix.window_column(year, cfg.n_pct_range)
    return _select(column, cfg.p_fraction, year)


def threshold_count(matrix: CitationMatrix, year: int, cfg: PercentileConfig) -> Optional[int]:
    """Count at rank :func:`threshold_rank` of the year's window population.

    Returns ``None`` when nothing is cited in the window.
    """
    return year_threshold(matrix, year, cfg).threshold


def expected_count(matrix: CitationMatrix, year: int, cfg: PercentileConfig) -> Optional[Fraction]:
    """Mean windowed count ``total / n``; ``None`` when ``n == 0``."""
    return year_threshold(matrix, year, cfg).expected


def _passes(count: int, found: YearThreshold) -> bool:
    if found.threshold is None:
        return False
    return count > found.threshold and count * found.n > found.total


def is_top(matrix: CitationMatrix, cr: RowRef, year: int, cfg: PercentileConfig) -> bool:
    """True iff *cr* beats both the threshold count and the expected count in *year*."""
    count = windowed_count(matrix, cr, year, cfg.n_pct_range)
    return _passes(count, year_threshold(matrix, year, cfg))


def _evaluated_years(matrix: CitationMatrix, py_range: Optional[ImportWindow]) -> range:
    if py_range is None:
        return matrix.years
    return range(max(py_range.min_year, matrix.py_min), min(py_range.max_year, matrix.py_max) + 1)


def n_top(
    matrix: CitationMatrix,
    cr: RowRef,
    cfg: PercentileConfig,
    py_range: Optional[ImportWindow] = None,
) -> int:
    """Number of citing years in *py_range* (default: the matrix range) where *cr* is top."""
    return sum(1 for year in _evaluated_years(matrix, py_range) if is_top(matrix, cr, year, cfg))


def year_thresholds(
    matrix: CitationMatrix,
    cfg: PercentileConfig,
    threads: int = 1,
) -> list[YearThreshold]:
    """Per-citing-year diagnostics for every year of the matrix."""
    years = list(matrix.years)
    if threads > 1 and len(years) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda year: year_threshold(matrix, year, cfg), years))
    return [year_threshold(matrix, year, cfg) for year in years]


def _top_mask(matrix: CitationMatrix, year: int, cfg: PercentileConfig) -> np.ndarray:
    column = matrix.window_column(year, cfg.n_pct_range)
    found = _select(column, cfg.p_fraction, year)
    if found.threshold is None:
        return np.zeros(len(matrix), dtype=bool)
    return (column > found.threshold) & (column * found.n > found.total)


def n_top_all(
    matrix: CitationMatrix,
    cfg: PercentileConfig,
    py_range: Optional[ImportWindow] = None,
    threads: int = 1,
) -> list[int]:
    """N_TOPp+ of every matrix row, in row order.

    Citing years are independent, so they are evaluated on up to *threads*
    worker threads and the per-year membership masks summed.
    """
    years = list(_evaluated_years(matrix, py_range))
    totals = np.zeros(len(matrix), dtype=np.int64)
    if threads > 1 and len(years) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            masks: Sequence[np.ndarray] = list(
                pool.map(lambda year: _top_mask(matrix, year, cfg), years)
            )
    else:
        masks = [_top_mask(matrix, year, cfg) for year in years]
    for mask in masks:
        totals += mask
    return [int(value) for value in totals]
