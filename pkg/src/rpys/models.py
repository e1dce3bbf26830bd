"""Canonical data models shared across all rpys modules.

This is the single source of truth for data shapes in the project. Every other
module imports from here rather than defining its own models. The models fall
into two groups:

**Configuration models** -- Pydantic v2 models validated when a config file
or CLI flags are loaded:
    :class:`ImportWindow`, :class:`ClusterConfig`, :class:`SmoothingConfig`,
    :class:`PercentileConfig`, :class:`SortKey`, :class:`ExportConfig`, and
    :class:`PipelineConfig`.

**Pipeline records** -- slotted dataclasses produced and consumed on the hot
path (one per citing record, per reference variant, per merged reference).
A 1M-record corpus creates tens of millions of these, so they skip Pydantic
validation:
    :class:`SourceRecord`, :class:`CitedRefVariant`, :class:`MergedCR`,
    :class:`IndicatorRow`, :class:`RpySpectrumRow`, :class:`YearThreshold`,
    plus the counters
    :class:`ParseStats`, :class:`CorpusStats` and :class:`PipelineSummary`.

Default values reproduce the landmark-detection run::

    set(n_pct_range: 2, median_range: 2)
    importFile(RPY: [1900, 2015, false], PY: [1980, 2017, false], maxCR: 0)
    cluster(threshold: 0.75, volume: true, page: true, DOI: false)
    exportFile(sort: ["N_TOPO_1_Plus DESC", "N_CR DESC"], filter: N_TOPO_1_Plus >= 10)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


# --- Configuration models ---


class ImportWindow(BaseModel):
    """Inclusive year window applied at import time.

    Used twice: as the PY window on citing records and as the RPY window on
    cited references. ``include_missing_year`` decides whether items without
    a parseable year pass the window.
    """

    model_config = ConfigDict(frozen=True)

    min_year: int
    max_year: int
    include_missing_year: bool = False

    @model_validator(mode="after")
    def _check_order(self) -> "ImportWindow":
        if self.min_year > self.max_year:
            raise ValueError(
                f"window minimum {self.min_year} exceeds maximum {self.max_year}"
            )
        return self

    def admits(self, year: Optional[int]) -> bool:
        """Return True if *year* (``None`` for missing) passes the window."""
        if year is None:
            return self.include_missing_year
        return self.min_year <= year <= self.max_year

    def years(self) -> range:
        """The inclusive year range as a :class:`range`."""
        return range(self.min_year, self.max_year + 1)


def _default_py_window() -> ImportWindow:
    return ImportWindow(min_year=1980, max_year=2017, include_missing_year=False)


def _default_rpy_window() -> ImportWindow:
    return ImportWindow(min_year=1900, max_year=2015, include_missing_year=False)


class ClusterConfig(BaseModel):
    """Settings for grouping spelling variants of the same cited reference.

    A pair of variants in the same RPY block matches when their similarity
    reaches ``threshold`` and every enabled field gate agrees.
    """

    threshold: float = Field(default=0.75, ge=0.0, le=1.0)
    require_volume: bool = True
    require_page: bool = True
    require_doi: bool = False

    @property
    def threshold_fraction(self) -> Fraction:
        """The threshold as an exact fraction of its decimal text (0.75 -> 3/4)."""
        return Fraction(str(self.threshold))


class SmoothingConfig(BaseModel):
    """Half-widths of the neighbouring-year windows.

    ``n_pct_range`` widens the citing-year window of the percentile
    indicators; ``median_range`` is the half-width of the RPYS sliding median.
    """

    n_pct_range: int = Field(default=2, ge=0)
    median_range: int = Field(default=2, ge=0)


class PercentileConfig(BaseModel):
    """Percentile level of the top-cited test.

    ``p = 0.001`` gives the top-0.1 % indicator, ``0.01`` the top-1 %,
    ``0.10`` the top-10 %.
    """

    p: float = Field(default=0.001, gt=0.0, lt=1.0)
    n_pct_range: int = Field(default=2, ge=0)

    @property
    def p_fraction(self) -> Fraction:
        """``p`` as an exact fraction of its decimal text (0.001 -> 1/1000)."""
        return Fraction(str(self.p))


class SortColumn(str, enum.Enum):
    """Columns the exported rows can be sorted by."""

    N_TOP = "N_TOP"
    N_CR = "N_CR"
    RPY = "RPY"
    CR = "CR"


class SortDirection(str, enum.Enum):
    """Sort direction of a :class:`SortKey`."""

    ASC = "ASC"
    DESC = "DESC"


class SortKey(BaseModel):
    """One ``(column, direction)`` element of the export sort order."""

    model_config = ConfigDict(frozen=True)

    column: SortColumn
    direction: SortDirection = SortDirection.DESC

    def __str__(self) -> str:
        return f"{self.column.value} {self.direction.value}"


def _default_sort_keys() -> list[SortKey]:
    return [
        SortKey(column=SortColumn.N_TOP, direction=SortDirection.DESC),
        SortKey(column=SortColumn.N_CR, direction=SortDirection.DESC),
    ]


class ExportConfig(BaseModel):
    """Optional extras of the CSV export. Everything is off by default."""

    spectrum: bool = Field(
        default=False, description="Also write <output>.rpys.csv with the RPYS spectrum"
    )
    header_comment: bool = Field(
        default=False, description="Prefix the CSV with a '# p=<value>' comment line"
    )
    levels: list[float] = Field(
        default_factory=list,
        description="Additional percentile levels exported as N_TOP<label>+ columns",
    )
    cluster_dump: Optional[Path] = Field(
        default=None, description="Write one line per cluster to this file for auditing"
    )

    @model_validator(mode="after")
    def _check_levels(self) -> "ExportConfig":
        for level in self.levels:
            if not 0.0 < level < 1.0:
                raise ValueError(f"export level {level} must lie strictly between 0 and 1")
        return self


class PipelineConfig(BaseModel):
    """Every parameter of an end-to-end run.

    Loaded from a flat ``key = value`` file by
    :func:`~rpys.config.load_config` and overridden by CLI flags via
    :func:`~rpys.config.cli_settings`. ``percentile.n_pct_range`` always
    follows ``smoothing.n_pct_range``.

    See Also:
        :func:`~rpys.pipeline.runner.run_pipeline`: Consumes this model.
    """

    inputs: list[Path] = Field(default_factory=list, description="WoS export files")
    output: Optional[Path] = Field(default=None, description="CSV output path")
    py_window: ImportWindow = Field(default_factory=_default_py_window)
    rpy_window: ImportWindow = Field(default_factory=_default_rpy_window)
    max_cr: int = Field(default=0, ge=0, description="Per-record reference cap, 0 = none")
    cluster: ClusterConfig = Field(default_factory=ClusterConfig)
    smoothing: SmoothingConfig = Field(default_factory=SmoothingConfig)
    percentile: PercentileConfig = Field(default_factory=PercentileConfig)
    min_indicator: int = Field(default=10, ge=0)
    sort_keys: list[SortKey] = Field(default_factory=_default_sort_keys)
    linked_ratio_min: float = Field(default=0.30, ge=0.0, le=1.0)
    doc_type_filter: Optional[str] = None
    export: ExportConfig = Field(default_factory=ExportConfig)
    cache: bool = False

    @model_validator(mode="after")
    def _sync_percentile_range(self) -> "PipelineConfig":
        if self.percentile.n_pct_range != self.smoothing.n_pct_range:
            self.percentile = self.percentile.model_copy(
                update={"n_pct_range": self.smoothing.n_pct_range}
            )
        return self

    @property
    def linked_ratio_min_fraction(self) -> Fraction:
        """``linked_ratio_min`` as an exact fraction (0.30 -> 3/10)."""
        return Fraction(str(self.linked_ratio_min))


# --- Pipeline records ---


@dataclass(frozen=True, slots=True)
class SourceRecord:
    """One citing paper read from a WoS export.

    ``record_id`` is the UT accession number when present, otherwise a
    synthetic ``"<file>:<byte offset>"``. ``cited_refs`` holds the admitted
    raw CR strings in file order.
    """

    record_id: str
    citing_year: Optional[int]
    cited_refs: tuple[str, ...]
    doc_type: Optional[str] = None


@dataclass(slots=True)
class CitedRefVariant:
    """One distinct raw cited-reference string with its parsed fields.

    ``counts_by_year`` maps citing year to the number of occurrences of this
    exact string in records of that year.
    """

    raw: str
    author: str = ""
    rpy: Optional[int] = None
    source: str = ""
    volume: Optional[str] = None
    page: Optional[str] = None
    doi: Optional[str] = None
    counts_by_year: dict[int, int] = field(default_factory=dict)

    @property
    def total_count(self) -> int:
        """Total occurrences over all citing years."""
        return sum(self.counts_by_year.values())

    def add_occurrence(self, citing_year: int, count: int = 1) -> None:
        """Record *count* further occurrences in *citing_year*."""
        self.counts_by_year[citing_year] = self.counts_by_year.get(citing_year, 0) + count


@dataclass(frozen=True, slots=True)
class MergedCR:
    """Canonical cited reference standing for one cluster of variants.

    ``n_cr`` is the total number of occurrences across all members and
    ``counts_by_year`` their element-wise sum.
    """

    canonical_raw: str
    rpy: Optional[int]
    member_count: int
    n_cr: int
    counts_by_year: dict[int, int]


@dataclass(frozen=True, slots=True)
class IndicatorRow:
    """One exported row. ``extra_levels`` holds N_TOP values at the extra export levels."""

    cr: str
    rpy: Optional[int]
    n_cr: int
    n_top: int
    extra_levels: tuple[int, ...] = ()


@dataclass(frozen=True, slots=True)
class RpySpectrumRow:
    """One reference publication year of the RPYS spectrum.

    ``median_dev`` is exact; it is a half-integer when the clipped median
    window has even length.
    """

    rpy: int
    n_cr_year: int
    median_dev: Fraction


@dataclass(frozen=True, slots=True)
class YearThreshold:
    """Percentile population of one citing year (window-extended).

    ``threshold`` and ``expected`` are ``None`` when no reference is cited
    inside the window (``n == 0``); no reference can be top in that year.
    """

    year: int
    n: int
    total: int
    threshold: Optional[int]
    expected: Optional[Fraction]


@dataclass(slots=True)
class ParseStats:
    """Counters maintained by the streaming WoS parser."""

    records_read: int = 0
    records_admitted: int = 0
    records_skipped: int = 0
    broken_records: int = 0
    bytes_read: int = 0

    def absorb(self, other: "ParseStats") -> None:
        """Add *other*'s counters to this instance (multi-file imports)."""
        self.records_read += other.records_read
        self.records_admitted += other.records_admitted
        self.records_skipped += other.records_skipped
        self.broken_records += other.broken_records
        self.bytes_read += other.bytes_read


@dataclass(slots=True)
class CorpusStats:
    """Statistics over the aggregated variant table (the ``info`` report)."""

    records: int = 0
    cr_occurrences: int = 0
    distinct_variants: int = 0
    py_min: Optional[int] = None
    py_max: Optional[int] = None
    rpy_min: Optional[int] = None
    rpy_max: Optional[int] = None


@dataclass(slots=True)
class PipelineSummary:
    """End-of-run figures printed to stderr by ``rpys run``."""

    records_read: int = 0
    records_skipped: int = 0
    broken_records: int = 0
    variants: int = 0
    clusters: int = 0
    rows_exported: int = 0
    linked_ratio: Fraction = field(default_factory=Fraction)
    cache_hit: bool = False
