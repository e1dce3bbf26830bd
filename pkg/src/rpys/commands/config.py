"""Config commands -- show the effective configuration or write a starter file.

Provides the ``rpys config`` sub-command group. The configuration itself is
a flat ``key = value`` file (see :mod:`rpys.config`); ``show`` prints the
result of layering defaults, the config file, ``RPYS_*`` variables and
``--set`` overrides, and ``init`` writes the defaults to a new file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

import typer

from rpys.commands import reported_errors
from rpys.output import OutputFormat, get_output, info, print_data, success, suggest

config_app = typer.Typer(no_args_is_help=True)


@config_app.command("show")
def config_show(
    config_file: Optional[Path] = typer.Option(
        None, "--config", "-c", help="Pipeline config file (key = value)."
    ),
    set_items: Optional[list[str]] = typer.Option(
        None, "--set", metavar="KEY=VALUE", help="Override any config key (repeatable)."
    ),
) -> None:
    """Show the effective configuration.

    Prints the configuration in config-file format (or as JSON with
    ``--json``); the file it was loaded from, if any, goes to stderr.

    Example::

        rpys config show
        rpys config show -c ls.conf --set pct=0.01
        rpys --json config show
    """
    from rpys.config import cli_settings, dump_config, find_config_file, resolve_config

    with reported_errors():
        source = find_config_file(config_file)
        config = resolve_config(config_file, cli_settings({}, set_items or []))

    info(f"Config file: {source if source is not None else '(none, using defaults)'}")
    if get_output().format == OutputFormat.JSON:
        print_data(json.dumps(config.model_dump(mode="json"), indent=2))
    else:
        print_data(dump_config(config))


@config_app.command("init")
def config_init(
    path: Path = typer.Argument(Path("rpys.conf"), help="File to create."),
    force: bool = typer.Option(False, "--force", "-f", help="Overwrite an existing file."),
) -> None:
    """Write a config file holding the default landmark-run parameters.

    Example::

        rpys config init
        rpys config init ls.conf --force
    """
    from rpys.config import atomic_write, dump_config
    from rpys.exceptions import InvalidUsageError, InputError
    from rpys.models import PipelineConfig

    with reported_errors():
        if path.exists() and not force:
            raise InvalidUsageError(f"{path} already exists (use --force to overwrite)")
        try:
            atomic_write(path, dump_config(PipelineConfig()))
        except OSError as exc:
            raise InputError(exc.strerror or str(exc), path=str(path)) from exc

    success(f"Wrote {path}")
    suggest(f"Set 'input' and 'output' in {path}, then run: rpys run --config {path}")
