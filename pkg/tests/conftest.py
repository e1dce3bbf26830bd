"""Shared test fixtures for rpys.

Provides the bundled WoS fixtures, an isolated config environment, output
state management and a CLI runner. These fixtures are automatically
discovered by pytest and available to all test modules without explicit
imports. Plain builder functions live in :mod:`tests.helpers`.
"""

from __future__ import annotations

from pathlib import Path

import pytest

from rpys.config import KEYS, env_var_name
from rpys.output import OutputFormat, OutputManager, reset_output, set_output
from tests.helpers import FIXTURES_DIR


# ---------------------------------------------------------------------------
# Auto-reset global output state between tests
# ---------------------------------------------------------------------------


@pytest.fixture(autouse=True)
def _reset_output_between_tests() -> None:
    """Reset the global OutputManager after every test.

    The OutputManager caches references to sys.stdout/sys.stderr at
    creation time. When Typer's CliRunner redirects those streams during
    a test and the test finishes, the cached references become stale.
    Resetting forces a fresh manager to be created on next use.
    """
    yield
    reset_output()


# ---------------------------------------------------------------------------
# File fixtures
# ---------------------------------------------------------------------------


@pytest.fixture
def sample_wos() -> Path:
    """Six-record export: a continuation-heavy record, a Review, an
    out-of-window citing year, a record without UT and a broken record."""
    return FIXTURES_DIR / "sample_wos.txt"


@pytest.fixture
def landmark_wos() -> Path:
    """81-record export with two landmarks over citing years 2000-2004."""
    return FIXTURES_DIR / "landmark_wos.txt"


@pytest.fixture
def landmark_golden() -> Path:
    """Frozen CSV of ``landmark_wos`` at ``py = [2000, 2004]``, ``pct = 0.1``, ``min_n_top = 2``."""
    return FIXTURES_DIR / "landmark_golden.csv"


@pytest.fixture
def default_wos() -> Path:
    """500-record export over citing years 2000-2009 with 16 background references per record."""
    return FIXTURES_DIR / "default_wos.txt"


@pytest.fixture
def default_golden() -> Path:
    """Frozen CSV of ``default_wos`` at the default settings with ``min_n_top = 3``."""
    return FIXTURES_DIR / "default_golden.csv"


# ---------------------------------------------------------------------------
# Config isolation fixture
# ---------------------------------------------------------------------------


@pytest.fixture
def isolated_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Isolate configuration to a temporary directory.

    Sets XDG_CONFIG_HOME, XDG_CACHE_HOME, and XDG_DATA_HOME to
    subdirectories of tmp_path so that tests never touch real user
    config. Clears every RPYS_* environment variable, pins RPYS_THREADS
    to 1 and changes the working directory to tmp_path.

    Returns:
        The tmp_path root directory for additional file creation.
    """
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path / "config"))
    monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path / "cache"))
    monkeypatch.setenv("XDG_DATA_HOME", str(tmp_path / "data"))

    monkeypatch.delenv("RPYS_CONFIG", raising=False)
    for key in KEYS:
        monkeypatch.delenv(env_var_name(key), raising=False)
    monkeypatch.setenv("RPYS_THREADS", "1")

    monkeypatch.chdir(tmp_path)
    return tmp_path


# ---------------------------------------------------------------------------
# Output fixtures
# ---------------------------------------------------------------------------


@pytest.fixture
def quiet_output() -> OutputManager:
    """Install a PLAIN-format, quiet OutputManager for tests that don't care about output."""
    output = OutputManager(format=OutputFormat.PLAIN, quiet=True)
    set_output(output)
    yield output
    reset_output()


@pytest.fixture
def json_output() -> OutputManager:
    """Install a JSON-format OutputManager."""
    output = OutputManager(format=OutputFormat.JSON)
    set_output(output)
    yield output
    reset_output()


# ---------------------------------------------------------------------------
# CLI runner fixture
# ---------------------------------------------------------------------------


@pytest.fixture
def cli_runner():
    """Typer CLI test runner with stdout and stderr captured separately."""
    from typer.testing import CliRunner

    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        # Click 8.2 removed mix_stderr; stderr is always captured separately there.
        return CliRunner()
