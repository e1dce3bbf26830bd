"""Run command -- execute the landmark pipeline end to end.

Implements ``rpys run``: ingest the WoS exports, apply the linked-reference
gate, cluster and merge cited-reference variants, compute N_TOP per merged
reference, filter, sort and write the CSV. The run summary goes to stderr;
stdout stays empty.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import typer

from rpys.commands import reported_errors
from rpys.models import PipelineSummary
from rpys.output import info, success, suggest


def _report_summary(summary: PipelineSummary) -> None:
    info(f"Records read: {summary.records_read}")
    info(f"Records skipped: {summary.records_skipped}")
    info(f"Broken records: {summary.broken_records}")
    info(f"Variants: {summary.variants}")
    info(f"Clusters: {summary.clusters}")
    info(f"Rows exported: {summary.rows_exported}")


def run_command(
    config_file: Optional[Path] = typer.Option(
        None, "--config", "-c", help="Pipeline config file (key = value)."
    ),
    inputs: Optional[list[Path]] = typer.Option(
        None, "--input", "-i", help="WoS export file (repeatable)."
    ),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="CSV output path."),
    min_indicator: Optional[int] = typer.Option(
        None,
        "--min-indicator",
        "--filter-min-n-top",
        help="Minimum N_TOP for a row to be exported.",
    ),
    pct: Optional[float] = typer.Option(
        None, "--pct", help="Percentile level p (0.001 = top 0.1 %)."
    ),
    py: Optional[str] = typer.Option(
        None, "--py", metavar="MIN,MAX[,MISSING]", help="Citing-year window."
    ),
    rpy: Optional[str] = typer.Option(
        None, "--rpy", metavar="MIN,MAX[,MISSING]", help="Reference-year window."
    ),
    max_cr: Optional[int] = typer.Option(
        None, "--max-cr", help="Keep the first N references of each record (0 = all)."
    ),
    n_pct_range: Optional[int] = typer.Option(
        None, "--n-pct-range", help="Half-width of the citing-year window for N_TOP."
    ),
    median_range: Optional[int] = typer.Option(
        None, "--median-range", help="Half-width of the spectrum's sliding median."
    ),
    cluster_volume: Optional[bool] = typer.Option(
        None, "--cluster-volume/--no-cluster-volume", help="Volume gate when clustering."
    ),
    cluster_page: Optional[bool] = typer.Option(
        None, "--cluster-page/--no-cluster-page", help="Page gate when clustering."
    ),
    cluster_doi: Optional[bool] = typer.Option(
        None, "--cluster-doi/--no-cluster-doi", help="DOI gate when clustering."
    ),
    sort: Optional[str] = typer.Option(
        None, "--sort", metavar="'COLUMN DIR, ...'", help="Export order, e.g. 'N_TOP DESC'."
    ),
    linked_ratio_min: Optional[float] = typer.Option(
        None, "--linked-ratio-min", help="Minimum linked reference ratio of the gate."
    ),
    doc_type: Optional[str] = typer.Option(
        None, "--doc-type", help="Only admit records of this DT, e.g. Article."
    ),
    threshold: Optional[float] = typer.Option(
        None, "--threshold", "--cluster-threshold", help="Clustering similarity threshold."
    ),
    spectrum: Optional[bool] = typer.Option(
        None, "--spectrum/--no-spectrum", help="Also write <out>.rpys.csv."
    ),
    use_cache: Optional[bool] = typer.Option(
        None, "--cache/--no-cache", help="Reuse merged matrices across runs."
    ),
    set_items: Optional[list[str]] = typer.Option(
        None,
        "--set",
        metavar="KEY=VALUE",
        help=(
            "Override any config key (repeatable); export.levels, "
            "export.header_comment and export.cluster_dump have no flag of their own."
        ),
    ),
    force: bool = typer.Option(
        False, "--force", "-f", help="Continue when the linked-ratio gate fails."
    ),
) -> None:
    """Run the full pipeline and write the indicator CSV.

    Pipeline keys have flags: dots and underscores become dashes
    (``cluster.volume`` is ``--cluster-volume``, ``filter.min_n_top`` is
    ``--filter-min-n-top``). The export extras are set with ``--set``.

    Exit codes: 0 success (also when no row passes the filter), 2 usage or
    config error, 3 linked-ratio gate failure (nothing written), 4 I/O error.

    Example::

        rpys run --config ls.conf
        rpys run -i ls_wos.txt -o ls.csv --min-indicator 3 --set cluster.doi=true
    """
    from rpys.config import cli_settings, resolve_config
    from rpys.pipeline import run_pipeline

    with reported_errors():
        settings = cli_settings(
            {
                "input": inputs or None,
                "output": out,
                "filter.min_n_top": min_indicator,
                "pct": pct,
                "py": py,
                "rpy": rpy,
                "max_cr": max_cr,
                "n_pct_range": n_pct_range,
                "median_range": median_range,
                "cluster.threshold": threshold,
                "cluster.volume": cluster_volume,
                "cluster.page": cluster_page,
                "cluster.doi": cluster_doi,
                "sort": sort,
                "linked_ratio_min": linked_ratio_min,
                "doc_type": doc_type,
                "export.spectrum": spectrum,
                "cache": use_cache,
            },
            set_items or [],
        )
        config = resolve_config(config_file, settings)
        result = run_pipeline(config, force=force)

    _report_summary(result.summary)
    for path in result.written:
        success(f"Wrote {path}")
    if result.summary.rows_exported == 0:
        suggest(
            f"No reference reached N_TOP >= {config.min_indicator}; "
            "retry with a smaller --min-indicator (filter.min_n_top)"
        )
