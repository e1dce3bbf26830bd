"""Terminal output for rpys: data on stdout, diagnostics on stderr.

stdout carries only what a shell pipeline consumes: the ``info`` report,
the spectrum CSV of ``rpys spectrum`` without ``--out``, ``config show``
dumps and ``--years`` tables. Everything else (stage progress, the run
summary, gate warnings, errors, next-step hints) goes to stderr, so that

    rpys spectrum -i ls_wos.txt > ls.rpys.csv

never mixes the two. Rich styling is used only on an interactive terminal;
``NO_COLOR``, ``TERM=dumb`` and ``--no-color`` turn it off.

Pipeline code calls the module-level helpers (:func:`info`,
:func:`progress`, :func:`debug` ...), which forward to the
:class:`OutputManager` installed by :func:`~rpys.app.main_callback`.
"""

from __future__ import annotations

import json
import os
import sys
from collections.abc import Mapping
from enum import Enum
from typing import Any, Optional

from rich.console import Console
from rich.markup import escape
from rich.table import Table


class OutputFormat(str, Enum):
    """Output format of stdout data. ``AUTO`` picks ``RICH`` on a colour TTY, ``PLAIN`` otherwise."""

    AUTO = "auto"
    JSON = "json"
    PLAIN = "plain"
    RICH = "rich"


# (prefix, Rich style of the prefix, Rich style of the message)
_KINDS: dict[str, tuple[str, str, str]] = {
    "info": ("", "", ""),
    "success": ("", "", "green"),
    "warning": ("Warning: ", "yellow", ""),
    "error": ("Error: ", "bold red", ""),
    "suggest": ("→ ", "dim", "dim"),
    "debug": ("[debug] ", "dim", "dim"),
    "progress": ("", "", "dim"),
}


class OutputManager:
    """Routes data and diagnostics to the right stream in the right format.

    Args:
        format: Format of stdout data.
        no_color: Never style anything.
        quiet: Drop info, success, suggestion and progress messages.
            Warnings and errors are always shown.
        verbose: Show debug messages.
    """

    def __init__(
        self,
        format: OutputFormat = OutputFormat.AUTO,
        no_color: bool = False,
        quiet: bool = False,
        verbose: bool = False,
    ) -> None:
        self._no_color = no_color or _should_disable_color()
        self._quiet = quiet
        self._verbose = verbose
        if format == OutputFormat.AUTO:
            format = OutputFormat.RICH if _is_tty() and not self._no_color else OutputFormat.PLAIN
        self._format = format
        self._stdout = Console(
            file=sys.stdout,
            no_color=self._no_color,
            force_terminal=format == OutputFormat.RICH,
        )
        self._stderr = Console(file=sys.stderr, no_color=self._no_color, stderr=True)

    @property
    def format(self) -> OutputFormat:
        return self._format

    @property
    def is_quiet(self) -> bool:
        return self._quiet

    @property
    def is_verbose(self) -> bool:
        return self._verbose

    # --- stdout ---

    def print_data(self, text: str) -> None:
        """Write *text* to stdout, adding a final newline when it lacks one."""
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        sys.stdout.flush()

    def print_report(self, report: Mapping[str, Any]) -> None:
        """Write a flat report: a JSON object, or ``key: value`` lines with ``None`` as ``-``."""
        if self._format == OutputFormat.JSON:
            self.print_data(json.dumps(dict(report), indent=2, ensure_ascii=False, default=str))
            return
        self.print_data(
            "\n".join(f"{key}: {'-' if value is None else value}" for key, value in report.items())
        )

    def print_table(
        self,
        headers: list[str],
        rows: list[list[str]],
        title: Optional[str] = None,
    ) -> None:
        """Write a table: JSON records, tab-separated lines, or a Rich table."""
        if self._format == OutputFormat.JSON:
            self.print_data(
                json.dumps([dict(zip(headers, row)) for row in rows], indent=2, ensure_ascii=False)
            )
        elif self._format == OutputFormat.PLAIN:
            self.print_data("\n".join("\t".join(line) for line in [headers, *rows]))
        else:
            table = Table(title=title, header_style="bold cyan")
            for header in headers:
                table.add_column(header)
            for row in rows:
                table.add_row(*row)
            self._stdout.print(table)

    # --- stderr ---

    def _emit(self, kind: str, message: str) -> None:
        prefix, prefix_style, style = _KINDS[kind]
        if self._no_color or not self._stderr.is_terminal:
            print(f"{prefix}{message}", file=sys.stderr, flush=True)
            return
        head = f"[{prefix_style}]{escape(prefix)}[/]" if prefix_style else escape(prefix)
        body = f"[{style}]{escape(message)}[/]" if style else escape(message)
        self._stderr.print(head + body, highlight=False)

    def info(self, message: str) -> None:
        if not self._quiet:
            self._emit("info", message)

    def success(self, message: str) -> None:
        if not self._quiet:
            self._emit("success", message)

    def warning(self, message: str) -> None:
        self._emit("warning", message)

    def error(self, message: str) -> None:
        self._emit("error", message)

    def suggest(self, message: str) -> None:
        """A next step for the user, e.g. a smaller ``--min-indicator``."""
        if not self._quiet:
            self._emit("suggest", message)

    def debug(self, message: str) -> None:
        if self._verbose:
            self._emit("debug", message)

    def progress(self, message: str) -> None:
        """Stage progress; shown only when stdout is an interactive terminal."""
        if not self._quiet and _is_tty():
            self._emit("progress", message)


def _is_tty() -> bool:
    return hasattr(sys.stdout, "isatty") and sys.stdout.isatty()


def _should_disable_color() -> bool:
    """``NO_COLOR`` (any value, even empty) or ``TERM=dumb``."""
    return os.environ.get("NO_COLOR") is not None or os.environ.get("TERM") == "dumb"


# --- global instance ---

_output: Optional[OutputManager] = None


def get_output() -> OutputManager:
    """The installed manager; an ``AUTO`` one is created on first use."""
    global _output
    if _output is None:
        _output = OutputManager()
    return _output


def set_output(output: OutputManager) -> None:
    global _output
    _output = output


def reset_output() -> None:
    """Forget the installed manager (its consoles hold the streams seen at creation)."""
    global _output
    _output = None


def print_data(text: str) -> None:
    get_output().print_data(text)


def print_report(report: Mapping[str, Any]) -> None:
    get_output().print_report(report)


def print_table(headers: list[str], rows: list[list[str]], title: Optional[str] = None) -> None:
    get_output().print_table(headers, rows, title)


def info(message: str) -> None:
    get_output().info(message)


def success(message: str) -> None:
    get_output().success(message)


def warning(message: str) -> None:
    get_output().warning(message)


def error(message: str) -> None:
    get_output().error(message)


def suggest(message: str) -> None:
    get_output().suggest(message)


def debug(message: str) -> None:
    get_output().debug(message)


def progress(message: str) -> None:
    get_output().progress(message)
