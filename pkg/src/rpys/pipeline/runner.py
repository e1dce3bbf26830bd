"""End-to-end pipeline: ingest -> gate -> cluster -> merge -> indicators -> export.

The stage order follows a CRExplorer landmark script::

    importFile(...)  ->  linked-ratio gate  ->  cluster(...)  ->  merge()
    ->  N_TOP per merged reference  ->  filter  ->  sort  ->  exportFile(...)

:func:`build_corpus` covers everything up to the citation matrix and is the
unit stored in the :class:`~rpys.cache.MatrixCache`. :func:`run_pipeline`
adds the indicator, filter, sort and export stages. :func:`inspect_corpus`
backs ``rpys info``.

Stages report through :mod:`rpys.output` (``progress``/``debug`` on stderr);
nothing here writes to stdout.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from rpys.cache import CachedCorpus, MatrixCache
from rpys.config import get_cache_dir, resolve_threads
from rpys.dedup import cluster, merge
from rpys.exceptions import CorpusError, GateError, InvalidUsageError
from rpys.indicators import build_matrix, n_top_all, rpys_spectrum
from rpys.indicators.matrix import CitationMatrix
from rpys.models import (
    CitedRefVariant,
    IndicatorRow,
    ParseStats,
    PercentileConfig,
    PipelineConfig,
    PipelineSummary,
    RpySpectrumRow,
    SortColumn,
    SortDirection,
    SortKey,
)
from rpys.output import debug, progress, warning
from rpys.parser import VariantTable, import_files, linked_ratio
from rpys.pipeline.export import export_csv, write_cluster_dump

TIE_BREAKERS: tuple[SortKey, ...] = (
    SortKey(column=SortColumn.N_TOP, direction=SortDirection.DESC),
    SortKey(column=SortColumn.N_CR, direction=SortDirection.DESC),
    SortKey(column=SortColumn.RPY, direction=SortDirection.ASC),
    SortKey(column=SortColumn.CR, direction=SortDirection.ASC),
)

_SORT_VALUES: dict[SortColumn, Callable[[IndicatorRow], Any]] = {
    SortColumn.N_TOP: lambda row: row.n_top,
    SortColumn.N_CR: lambda row: row.n_cr,
    SortColumn.RPY: lambda row: (row.rpy is None, row.rpy or 0),
    SortColumn.CR: lambda row: row.cr,
}


@dataclass
class PipelineResult:
    """Outcome of :func:`run_pipeline`."""

    rows: list[IndicatorRow]
    matrix: CitationMatrix
    summary: PipelineSummary
    spectrum: Optional[list[RpySpectrumRow]] = None
    written: list[Path] = field(default_factory=list)


# --- Stages ---


def check_gate(ratio: Fraction, minimum: Fraction, force: bool = False) -> None:
    """Enforce the linked-reference gate.

    Raises:
        GateError: *ratio* is below *minimum* and *force* is not set.
    """
    if ratio >= minimum:
        debug(f"Linked reference ratio {float(ratio):.4f} passes the minimum {float(minimum):.2f}")
        return
    if not force:
        raise GateError(ratio, minimum)
    warning(
        f"Linked reference ratio {float(ratio):.4f} is below the minimum "
        f"{float(minimum):.2f}; continuing because --force was given"
    )


def _require_inputs(config: PipelineConfig) -> None:
    if not config.inputs:
        raise InvalidUsageError("No input files (pass --input or set 'input' in the config file)")


def _ingest(config: PipelineConfig, threads: int) -> tuple[VariantTable, ParseStats]:
    """Parse every input once; raises CorpusError when no record is admitted."""
    _require_inputs(config)
    progress(f"Importing {len(config.inputs)} file(s)...")
    table, stats = import_files(
        config.inputs,
        config.py_window,
        config.rpy_window,
        max_cr=config.max_cr,
        doc_type_filter=config.doc_type_filter,
        threads=threads,
    )
    debug(
        f"Read {stats.records_read} records ({stats.bytes_read} bytes), "
        f"admitted {stats.records_admitted}, broken {stats.broken_records}"
    )
    if table.records == 0:
        raise CorpusError("no records")
    return table, stats


def _assemble(
    variants: list[CitedRefVariant],
    stats: ParseStats,
    ratio: Fraction,
    config: PipelineConfig,
    threads: int,
) -> CachedCorpus:
    progress(f"Clustering {len(variants)} variants...")
    partition = cluster(variants, config.cluster, threads=threads)
    merged = merge(partition)
    debug(f"Merged {len(variants)} variants into {len(merged)} references")
    return CachedCorpus(
        matrix=build_matrix(merged, config.py_window),
        parse_stats=stats,
        variants=len(variants),
        linked_ratio=ratio,
    )


def build_corpus(
    config: PipelineConfig,
    *,
    threads: int = 1,
    cache: Optional[MatrixCache] = None,
    force: bool = False,
    gate: bool = True,
) -> tuple[CachedCorpus, bool]:
    """Run the ingest, gate, cluster, merge and matrix stages.

    Returns:
        The corpus and whether it came from the cache.

    Raises:
        InvalidUsageError: No input files configured.
        InputError: An input file cannot be read.
        CorpusError: No admitted records or no cited references.
        GateError: The linked ratio fails the gate (only when *gate*).
    """
    _require_inputs(config)
    key: Optional[str] = None
    if cache is not None and cache.enabled:
        key = cache.make_key(config.inputs, config)
        hit = cache.get(key)
        if hit is not None:
            debug(f"Matrix cache hit ({key[:12]})")
            if gate:
                check_gate(hit.linked_ratio, config.linked_ratio_min_fraction, force)
            return hit, True

    table, stats = _ingest(config, threads)
    variants = table.variants()
    ratio = linked_ratio(variants)
    if gate:
        check_gate(ratio, config.linked_ratio_min_fraction, force)

    corpus = _assemble(variants, stats, ratio, config, threads)
    if key is not None and cache is not None:
        cache.set(key, corpus)
    return corpus, False


def compute_rows(
    matrix: CitationMatrix,
    config: PipelineConfig,
    threads: int = 1,
) -> list[IndicatorRow]:
    """N_TOP at the configured level (plus any extra export levels) for every merged reference."""
    progress(f"Computing indicators for {len(matrix)} references...")
    primary = n_top_all(matrix, config.percentile, config.py_window, threads=threads)
    extras = [
        n_top_all(
            matrix,
            PercentileConfig(p=level, n_pct_range=config.smoothing.n_pct_range),
            config.py_window,
            threads=threads,
        )
        for level in config.export.levels
    ]
    return [
        IndicatorRow(
            cr=item.canonical_raw,
            rpy=item.rpy,
            n_cr=item.n_cr,
            n_top=primary[index],
            extra_levels=tuple(column[index] for column in extras),
        )
        for index, item in enumerate(matrix.rows)
    ]


def filter_rows(rows: Iterable[IndicatorRow], min_indicator: int) -> list[IndicatorRow]:
    """Keep rows with ``n_top >= min_indicator``."""
    return [row for row in rows if row.n_top >= min_indicator]


def effective_sort_keys(keys: Sequence[SortKey]) -> list[SortKey]:
    """*keys* followed by the tie-breakers for every column they do not mention."""
    used = {key.column for key in keys}
    return list(keys) + [key for key in TIE_BREAKERS if key.column not in used]


def sort_rows(rows: Iterable[IndicatorRow], keys: Sequence[SortKey]) -> list[IndicatorRow]:
    """Sort *rows* into a total order.

    Applies stable sorts from the least to the most significant key; the
    CR tie-breaker makes the order total because canonical strings are
    unique.
    """
    ordered = list(rows)
    for key in reversed(effective_sort_keys(keys)):
        ordered.sort(key=_SORT_VALUES[key.column], reverse=key.direction is SortDirection.DESC)
    return ordered


# --- Entry points ---


def _open_cache(config: PipelineConfig, cache: Optional[MatrixCache]) -> tuple[Optional[MatrixCache], bool]:
    if cache is not None:
        return cache, False
    if config.cache:
        return MatrixCache(get_cache_dir(), enabled=True), True
    return None, False


def run_pipeline(
    config: PipelineConfig,
    *,
    force: bool = False,
    threads: Optional[int] = None,
    cache: Optional[MatrixCache] = None,
) -> PipelineResult:
    """Execute the whole pipeline and write the CSV export.

    Args:
        config: Effective configuration; ``config.output`` must be set.
        force: Continue (with a warning) when the linked-ratio gate fails.
        threads: Worker thread cap; defaults to :func:`~rpys.config.resolve_threads`.
        cache: Matrix cache to use; opened from ``config.cache`` when omitted.

    Raises:
        GateError: Linked ratio below ``linked_ratio_min``; nothing is written.
    """
    if config.output is None:
        raise InvalidUsageError("No output path (pass --out or set 'output' in the config file)")
    workers = threads if threads is not None else resolve_threads()
    active_cache, owned = _open_cache(config, cache)
    try:
        corpus, cache_hit = build_corpus(
            config, threads=workers, cache=active_cache, force=force
        )
    finally:
        if owned and active_cache is not None:
            active_cache.close()

    matrix = corpus.matrix
    rows = sort_rows(
        filter_rows(compute_rows(matrix, config, workers), config.min_indicator),
        config.sort_keys,
    )
    spectrum = (
        rpys_spectrum(matrix, config.smoothing.median_range) if config.export.spectrum else None
    )

    written = export_csv(
        rows,
        config.output,
        spectrum=spectrum,
        levels=config.export.levels,
        p=config.percentile.p if config.export.header_comment else None,
    )
    if config.export.cluster_dump is not None:
        written.append(write_cluster_dump(matrix.rows, config.export.cluster_dump))

    stats = corpus.parse_stats
    summary = PipelineSummary(
        records_read=stats.records_read,
        records_skipped=stats.records_skipped,
        broken_records=stats.broken_records,
        variants=corpus.variants,
        clusters=len(matrix),
        rows_exported=len(rows),
        linked_ratio=corpus.linked_ratio,
        cache_hit=cache_hit,
    )
    return PipelineResult(
        rows=rows, matrix=matrix, summary=summary, spectrum=spectrum, written=written
    )


def run_spectrum(
    config: PipelineConfig,
    *,
    threads: Optional[int] = None,
    cache: Optional[MatrixCache] = None,
) -> list[RpySpectrumRow]:
    """Build the corpus (without the gate) and return its RPYS spectrum."""
    workers = threads if threads is not None else resolve_threads()
    active_cache, owned = _open_cache(config, cache)
    try:
        corpus, _ = build_corpus(config, threads=workers, cache=active_cache, gate=False)
    finally:
        if owned and active_cache is not None:
            active_cache.close()
    return rpys_spectrum(corpus.matrix, config.smoothing.median_range)


def _span(low: Optional[int], high: Optional[int]) -> Optional[str]:
    if low is None or high is None:
        return None
    return f"{low}-{high}"


@dataclass
class CorpusInfo:
    """Outcome of :func:`inspect_corpus`: the ``info`` report and, on request, the matrix."""

    report: dict[str, Any]
    matrix: Optional[CitationMatrix] = None


def inspect_corpus(
    config: PipelineConfig,
    threads: Optional[int] = None,
    *,
    with_matrix: bool = False,
) -> CorpusInfo:
    """Corpus statistics for ``rpys info``, in report order.

    The inputs are parsed once. With *with_matrix* the same variants are
    also clustered into a citation matrix (no gate).

    Raises:
        CorpusError: The inputs hold no admitted records ("no records") or
            no cited references.
    """
    workers = threads if threads is not None else resolve_threads()
    table, stats = _ingest(config, workers)
    corpus = table.stats()
    variants = table.variants()
    ratio = linked_ratio(variants)
    report = {
        "records": corpus.records,
        "records_skipped": stats.records_skipped,
        "broken_records": stats.broken_records,
        "citing_years": _span(corpus.py_min, corpus.py_max),
        "cr_occurrences": corpus.cr_occurrences,
        "distinct_variants": corpus.distinct_variants,
        "linked_ratio": f"{float(ratio):.4f}",
        "rpy_span": _span(corpus.rpy_min, corpus.rpy_max),
    }
    if not with_matrix:
        return CorpusInfo(report)
    return CorpusInfo(report, _assemble(variants, stats, ratio, config, workers).matrix)


def collect_info(config: PipelineConfig, threads: Optional[int] = None) -> dict[str, Any]:
    """The ``info`` report alone; see :func:`inspect_corpus`."""
    return inspect_corpus(config, threads).report
