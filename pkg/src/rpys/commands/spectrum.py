"""Spectrum command -- the RPYS spectrum without the indicator stages."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import typer

from rpys.commands import reported_errors
from rpys.output import print_data, success


def spectrum_command(
    config_file: Optional[Path] = typer.Option(
        None, "--config", "-c", help="Pipeline config file (key = value)."
    ),
    inputs: Optional[list[Path]] = typer.Option(
        None, "--input", "-i", help="WoS export file (repeatable)."
    ),
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="Spectrum CSV path (stdout when omitted)."
    ),
    median_range: Optional[int] = typer.Option(
        None, "--median-range", help="Half-width of the sliding median window."
    ),
    set_items: Optional[list[str]] = typer.Option(
        None, "--set", metavar="KEY=VALUE", help="Override any config key (repeatable)."
    ),
) -> None:
    """Write the RPYS spectrum (``RPY,N_CR,MEDIAN_DEV``).

    The linked-reference gate does not apply here.

    Example::

        rpys spectrum -i ls_wos.txt > ls.rpys.csv
        rpys spectrum -i ls_wos.txt -o ls.rpys.csv --median-range 3
    """
    from rpys.config import cli_settings, resolve_config
    from rpys.pipeline import export_spectrum_csv, run_spectrum
    from rpys.pipeline.export import render_spectrum_csv

    with reported_errors():
        settings = cli_settings(
            {"input": inputs or None, "median_range": median_range}, set_items or []
        )
        config = resolve_config(config_file, settings)
        spectrum = run_spectrum(config)
        if out is not None:
            export_spectrum_csv(spectrum, out)

    if out is None:
        print_data(render_spectrum_csv(spectrum))
    else:
        success(f"Wrote {out}")
