"""Info command -- corpus statistics for WoS exports."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import typer

from rpys.commands import reported_errors
from rpys.output import print_report, print_table


def info_command(
    config_file: Optional[Path] = typer.Option(
        None, "--config", "-c", help="Pipeline config file (key = value)."
    ),
    inputs: Optional[list[Path]] = typer.Option(
        None, "--input", "-i", help="WoS export file (repeatable)."
    ),
    set_items: Optional[list[str]] = typer.Option(
        None, "--set", metavar="KEY=VALUE", help="Override any config key (repeatable)."
    ),
    years: bool = typer.Option(
        False, "--years", help="Also print per-citing-year thresholds (clusters the corpus)."
    ),
) -> None:
    """Print corpus statistics, one ``key: value`` per line.

    Reports citing records, citing-year span, cited-reference occurrences,
    distinct variants, the linked reference ratio and the RPY span.

    Example::

        rpys info -i ls_wos.txt
        rpys --json info -i ls_wos.txt --years
    """
    from rpys.config import cli_settings, resolve_config, resolve_threads
    from rpys.indicators import year_thresholds
    from rpys.pipeline import inspect_corpus

    with reported_errors():
        config = resolve_config(
            config_file, cli_settings({"input": inputs or None}, set_items or [])
        )
        threads = resolve_threads()
        corpus = inspect_corpus(config, threads, with_matrix=years)
        print_report(corpus.report)
        if corpus.matrix is None:
            return
        table = year_thresholds(corpus.matrix, config.percentile, threads=threads)

    print_table(
        ["PY", "n", "total", "c", "expected"],
        [
            [
                str(item.year),
                str(item.n),
                str(item.total),
                "-" if item.threshold is None else str(item.threshold),
                "-" if item.expected is None else f"{float(item.expected):.4f}",
            ]
            for item in table
        ],
        title=f"Thresholds at p={config.percentile.p}",
    )
