"""Built-in CLI sub-commands for rpys.

This package groups all Typer sub-command modules that form the CLI's
top-level command tree:

* :mod:`~rpys.commands.run` -- the full landmark pipeline to a CSV file.
* :mod:`~rpys.commands.info` -- corpus statistics (``info()`` of a script).
* :mod:`~rpys.commands.spectrum` -- the RPYS spectrum on its own.
* :mod:`~rpys.commands.config` -- show or initialise a config file.
* :mod:`~rpys.commands.cache` -- inspect and purge the matrix cache.

Single commands export a plain callback registered on the root app;
multi-command groups (``config``, ``cache``) export a :class:`typer.Typer`.
"""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager

import typer

from rpys.exceptions import RpysError
from rpys.output import error


@contextmanager
def reported_errors() -> Iterator[None]:
    """Turn an :class:`~rpys.exceptions.RpysError` into ``Error: ...`` on stderr and its exit code."""
    try:
        yield
    except RpysError as exc:
        error(str(exc))
        raise typer.Exit(code=exc.exit_code) from None
