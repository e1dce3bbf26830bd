"""Cache commands -- inspect and purge the on-disk matrix cache."""

from __future__ import annotations

import typer

from rpys.output import print_report, success

cache_app = typer.Typer(no_args_is_help=True)


@cache_app.command("stats")
def cache_stats() -> None:
    """Show the number of cached matrices, their size on disk and the directory.

    Example::

        rpys cache stats
    """
    from rpys.cache import MatrixCache
    from rpys.config import get_cache_dir

    cache = MatrixCache(get_cache_dir())
    try:
        print_report(cache.stats())
    finally:
        cache.close()


@cache_app.command("clear")
def cache_clear() -> None:
    """Remove every cached matrix.

    Example::

        rpys cache clear
    """
    from rpys.cache import MatrixCache
    from rpys.config import get_cache_dir

    cache = MatrixCache(get_cache_dir())
    try:
        removed = cache.clear()
    finally:
        cache.close()
    success(f"Removed {removed} cached matrices")
