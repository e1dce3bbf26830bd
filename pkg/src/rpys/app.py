"""Typer application and ``rpys`` console-script entry point.

The root app registers ``run``, ``info``, ``spectrum`` and the ``config``
and ``cache`` groups. Its callback turns the global flags (``--json``,
``--plain``, ``--no-color``, ``--quiet``, ``--verbose``) into the
:class:`~rpys.output.OutputManager` every command writes through.

:func:`main` maps a stray :class:`~rpys.exceptions.RpysError` to its exit
code and writes anything else to a crash log before exiting with 1.
"""

from __future__ import annotations

import signal
import sys
import traceback
from datetime import datetime
from pathlib import Path
from typing import Any

import typer

from rpys import __version__
from rpys.commands.cache import cache_app
from rpys.commands.config import config_app
from rpys.commands.info import info_command
from rpys.commands.run import run_command
from rpys.commands.spectrum import spectrum_command
from rpys.exit_codes import EXIT_GENERIC_FAILURE

EXIT_INTERRUPTED = 130

app = typer.Typer(
    name="rpys",
    help="Detect landmark publications in Web of Science exports (RPYS, N_TOP indicators).",
    no_args_is_help=True,
    rich_markup_mode="rich",
)
app.command("run")(run_command)
app.command("info")(info_command)
app.command("spectrum")(spectrum_command)
app.add_typer(config_app, name="config", help="Show or initialise the pipeline configuration.")
app.add_typer(cache_app, name="cache", help="Inspect and purge the matrix cache.")


def _show_version(value: bool) -> None:
    if value:
        typer.echo(f"rpys {__version__}")
        raise typer.Exit()


@app.callback()
def main_callback(
    version: bool = typer.Option(
        False, "--version", callback=_show_version, is_eager=True, help="Show version and exit."
    ),
    json_output: bool = typer.Option(False, "--json", help="Reports and tables as JSON."),
    plain_output: bool = typer.Option(False, "--plain", help="Reports and tables as plain text."),
    no_color: bool = typer.Option(False, "--no-color", help="Disable colour."),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Only warnings and errors on stderr."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Stage details on stderr."),
) -> None:
    """Install the output manager for the invoked command."""
    from rpys.output import OutputFormat, OutputManager, set_output

    if json_output:
        fmt = OutputFormat.JSON
    elif plain_output:
        fmt = OutputFormat.PLAIN
    else:
        fmt = OutputFormat.AUTO
    set_output(OutputManager(format=fmt, no_color=no_color, quiet=quiet, verbose=verbose))


def _interrupted(signum: int, frame: Any) -> None:  # noqa: ANN401
    sys.stderr.write("\nCancelled.\n")
    sys.exit(EXIT_INTERRUPTED)


def _write_crash_log(exc: BaseException) -> Path:
    """Save the traceback of *exc* as ``crash-<timestamp>.log`` in the data directory."""
    from rpys.config import get_data_dir

    path = get_data_dir() / f"crash-{datetime.now():%Y%m%d-%H%M%S}.log"
    path.write_text("".join(traceback.format_exception(exc)), encoding="utf-8")
    return path


def main() -> None:
    """Console-script entry point; always ends in ``SystemExit``."""
    signal.signal(signal.SIGINT, _interrupted)
    try:
        app()
    except SystemExit:
        raise
    except KeyboardInterrupt:
        _interrupted(signal.SIGINT, None)
    except Exception as exc:
        from rpys.exceptions import RpysError
        from rpys.output import error

        if isinstance(exc, RpysError):
            error(str(exc))
            sys.exit(exc.exit_code)
        error(f"Unexpected error. Debug log: {_write_crash_log(exc)}")
        sys.exit(EXIT_GENERIC_FAILURE)
