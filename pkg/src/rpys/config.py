"""Configuration management with XDG paths, atomic writes, and precedence resolution.

This module handles all configuration for rpys:

* **Directory layout** -- XDG Base Directory compliant on Linux/BSD,
  ``~/.rpys/`` on macOS and Windows. See :func:`get_config_dir`,
  :func:`get_cache_dir`, :func:`get_data_dir`.
* **Config file** -- A flat text file with one ``key = value`` per line,
  ``#`` comments and blank lines ignored. The keys mirror the parameters of
  a CRExplorer script (``n_pct_range``, ``cluster.threshold``, ``rpy``,
  ``filter.min_n_top``, ``sort`` ...). See :data:`KEYS`,
  :func:`parse_config`, :func:`dump_config`.
* **Precedence resolution** -- :func:`resolve_config` layers defaults, the
  config file, ``RPYS_*`` environment variables and CLI overrides.
* **Worker threads** -- :func:`resolve_threads` reads ``RPYS_THREADS``.

All file writes use an atomic temp-file-then-rename strategy
(:func:`atomic_write`) so a crash never leaves a partial file behind.
"""

from __future__ import annotations

import os
import platform
import re
import tempfile
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from pydantic import ValidationError

from rpys.exceptions import ConfigError
from rpys.models import ImportWindow, PipelineConfig, SortColumn, SortDirection, SortKey

_APP_NAME = "rpys"
_CONFIG_FILENAME = "rpys.conf"
_PROJECT_CONFIG_FILENAME = "rpys.conf"
_ENV_PREFIX = "RPYS_"


# --- XDG path resolution ---


def _is_xdg_platform() -> bool:
    """Return True if the platform supports XDG Base Directory spec (Linux/FreeBSD)."""
    return platform.system() == "Linux" or platform.system().endswith("BSD")


def _fallback_base_dir() -> Path:
    return Path.home() / f".{_APP_NAME}"


def _xdg_base(env_var: str, default_segments: tuple[str, ...]) -> Path:
    env_value = os.environ.get(env_var, "")
    if env_value:
        return Path(env_value)
    base = Path.home()
    for seg in default_segments:
        base = base / seg
    return base


def get_config_dir() -> Path:
    """Return the configuration directory, creating it if necessary.

    On Linux/BSD: ``$XDG_CONFIG_HOME/rpys/`` (default ``~/.config/rpys/``).
    On macOS/Windows: ``~/.rpys/``.
    """
    if _is_xdg_platform():
        path = _xdg_base("XDG_CONFIG_HOME", (".config",)) / _APP_NAME
    else:
        path = _fallback_base_dir()
    path.mkdir(parents=True, exist_ok=True)
    return path


def get_cache_dir() -> Path:
    """Return the cache directory (matrix cache), creating it if necessary.

    Cached data can be safely deleted at any time.

    On Linux/BSD: ``$XDG_CACHE_HOME/rpys/`` (default ``~/.cache/rpys/``).
    On macOS/Windows: ``~/.rpys/cache/``.
    """
    if _is_xdg_platform():
        path = _xdg_base("XDG_CACHE_HOME", (".cache",)) / _APP_NAME
    else:
        path = _fallback_base_dir() / "cache"
    path.mkdir(parents=True, exist_ok=True)
    return path


def get_data_dir() -> Path:
    """Return the data directory (crash logs), creating it if necessary.

    On Linux/BSD: ``$XDG_DATA_HOME/rpys/`` (default ``~/.local/share/rpys/``).
    On macOS/Windows: ``~/.rpys/logs/``.
    """
    if _is_xdg_platform():
        path = _xdg_base("XDG_DATA_HOME", (".local", "share")) / _APP_NAME
    else:
        path = _fallback_base_dir() / "logs"
    path.mkdir(parents=True, exist_ok=True)
    return path


# --- Atomic file writes ---


def atomic_write(path: Path, data: str) -> None:
    """Write *data* to *path* atomically using temp file + rename.

    The temporary file lives in the same directory as *path* so that
    ``os.replace`` is an atomic rename on POSIX systems. Text is written as
    UTF-8 without newline translation. On any failure the temp file is
    removed and *path* is left untouched.
    """
    path.parent.mkdir(parents=True, exist_ok=True)

    fd = None
    tmp_path: Optional[str] = None
    try:
        fd = tempfile.NamedTemporaryFile(
            mode="w",
            dir=path.parent,
            prefix=f".{path.name}.",
            suffix=".tmp",
            delete=False,
            encoding="utf-8",
            newline="",
        )
        tmp_path = fd.name
        fd.write(data)
        fd.flush()
        os.fsync(fd.fileno())
        fd.close()
        fd = None  # prevent double-close in finally
        os.replace(tmp_path, path)
    except BaseException:
        # Clean up the temp file on any error (including KeyboardInterrupt).
        if fd is not None:
            fd.close()
        if tmp_path is not None:
            try:
                os.unlink(tmp_path)
            except OSError:
                pass
        raise


# --- Value codecs ---

_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}

_SORT_ALIASES = {
    "N_TOP": SortColumn.N_TOP,
    "N_TOP0_1+": SortColumn.N_TOP,
    "N_TOP0_1_PLUS": SortColumn.N_TOP,
    "N_TOPO_1_PLUS": SortColumn.N_TOP,
    "N_CR": SortColumn.N_CR,
    "RPY": SortColumn.RPY,
    "CR": SortColumn.CR,
}


def _split_list(value: str) -> list[str]:
    return [item.strip() for item in value.split(",") if item.strip()]


def _parse_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValueError(f"expected true or false, got {value!r}")


def _render_bool(value: bool) -> str:
    return "true" if value else "false"


def _parse_int(value: str) -> int:
    return int(value.strip())


def _parse_float(value: str) -> float:
    return float(value.strip())


def _parse_optional(value: str) -> Optional[str]:
    return value.strip() or None


def _parse_window(value: str) -> dict[str, Any]:
    """Parse ``min, max, include_missing`` with optional surrounding brackets."""
    text = value.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    parts = [part.strip() for part in text.split(",")]
    if len(parts) not in (2, 3):
        raise ValueError(f"expected 'min, max[, include_missing]', got {value!r}")
    window = {"min_year": int(parts[0]), "max_year": int(parts[1])}
    window["include_missing_year"] = _parse_bool(parts[2]) if len(parts) == 3 else False
    return window


def _render_window(window: ImportWindow) -> str:
    return f"[{window.min_year}, {window.max_year}, {_render_bool(window.include_missing_year)}]"


def _parse_sort(value: str) -> list[dict[str, str]]:
    """Parse ``N_TOP DESC, N_CR DESC``; script-style ``["N_TOPO_1_Plus DESC", ...]`` also works."""
    text = value.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    keys = []
    for item in _split_list(text):
        words = item.strip("\"'").split()
        column = _SORT_ALIASES.get(words[0].upper()) if words else None
        if column is None or len(words) > 2:
            raise ValueError(f"invalid sort key {item!r} (columns: N_TOP, N_CR, RPY, CR)")
        direction = SortDirection(words[1].upper()) if len(words) == 2 else SortDirection.DESC
        keys.append({"column": column.value, "direction": direction.value})
    if not keys:
        raise ValueError("sort needs at least one key")
    return keys


def _render_sort(keys: Iterable[SortKey]) -> str:
    return ", ".join(str(key) for key in keys)


@dataclass(frozen=True)
class ConfigKey:
    """One config-file key: where it lives in :class:`PipelineConfig` and how to (de)serialise it."""

    path: tuple[str, ...]
    parse: Callable[[str], Any]
    render: Callable[[Any], str]
    help: str


KEYS: dict[str, ConfigKey] = {
    "input": ConfigKey(
        ("inputs",), _split_list, lambda v: ", ".join(str(p) for p in v),
        "WoS export files, comma-separated",
    ),
    "output": ConfigKey(
        ("output",), _parse_optional, lambda v: "" if v is None else str(v), "CSV output path",
    ),
    "n_pct_range": ConfigKey(
        ("smoothing", "n_pct_range"), _parse_int, str, "Citing-year window half-width",
    ),
    "median_range": ConfigKey(
        ("smoothing", "median_range"), _parse_int, str, "RPYS median window half-width",
    ),
    "pct": ConfigKey(("percentile", "p"), _parse_float, str, "Percentile level p"),
    "cluster.threshold": ConfigKey(
        ("cluster", "threshold"), _parse_float, str, "Similarity threshold",
    ),
    "cluster.volume": ConfigKey(
        ("cluster", "require_volume"), _parse_bool, _render_bool, "Volume gate",
    ),
    "cluster.page": ConfigKey(
        ("cluster", "require_page"), _parse_bool, _render_bool, "Page gate",
    ),
    "cluster.doi": ConfigKey(("cluster", "require_doi"), _parse_bool, _render_bool, "DOI gate"),
    "rpy": ConfigKey(("rpy_window",), _parse_window, _render_window, "Reference year window"),
    "py": ConfigKey(("py_window",), _parse_window, _render_window, "Citing year window"),
    "max_cr": ConfigKey(("max_cr",), _parse_int, str, "Per-record reference cap (0 = none)"),
    "filter.min_n_top": ConfigKey(
        ("min_indicator",), _parse_int, str, "Minimum N_TOP for export",
    ),
    "sort": ConfigKey(("sort_keys",), _parse_sort, _render_sort, "Export sort order"),
    "linked_ratio_min": ConfigKey(
        ("linked_ratio_min",), _parse_float, str, "Minimum linked reference ratio",
    ),
    "doc_type": ConfigKey(
        ("doc_type_filter",), _parse_optional, lambda v: v or "", "Document type filter",
    ),
    "export.spectrum": ConfigKey(
        ("export", "spectrum"), _parse_bool, _render_bool, "Write <output>.rpys.csv",
    ),
    "export.header_comment": ConfigKey(
        ("export", "header_comment"), _parse_bool, _render_bool, "Write a '# p=' line",
    ),
    "export.levels": ConfigKey(
        ("export", "levels"),
        lambda v: [float(item) for item in _split_list(v)],
        lambda v: ", ".join(str(level) for level in v),
        "Extra percentile levels",
    ),
    "export.cluster_dump": ConfigKey(
        ("export", "cluster_dump"),
        _parse_optional,
        lambda v: "" if v is None else str(v),
        "Cluster audit file",
    ),
    "cache": ConfigKey(("cache",), _parse_bool, _render_bool, "Use the matrix cache"),
}


def _lookup(config: PipelineConfig, path: tuple[str, ...]) -> Any:
    value: Any = config
    for part in path:
        value = getattr(value, part)
    return value


def parse_value(key: str, value: str, where: str = "") -> Any:
    """Convert the text *value* of *key* into its model representation.

    Raises:
        ConfigError: Unknown key or unparseable value. *where* prefixes the
            message (``"file:line"`` or ``"--set"``).
    """
    prefix = f"{where}: " if where else ""
    spec = KEYS.get(key)
    if spec is None:
        raise ConfigError(f"{prefix}unknown key '{key}'")
    try:
        return spec.parse(value)
    except ValueError as exc:
        raise ConfigError(f"{prefix}invalid value for '{key}': {exc}") from exc


def apply_settings(config: PipelineConfig, settings: Mapping[str, Any]) -> PipelineConfig:
    """Return a copy of *config* with parsed *settings* (key -> parsed value) applied.

    Raises:
        ConfigError: The combined configuration fails validation.
    """
    if not settings:
        return config
    data = config.model_dump()
    for key, value in settings.items():
        node = data
        *parents, leaf = KEYS[key].path
        for part in parents:
            node = node[part]
        node[leaf] = value
    try:
        return PipelineConfig.model_validate(data)
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        raise ConfigError(f"Invalid configuration: {problems}") from exc


def parse_settings(text: str, source: str = "<config>") -> dict[str, Any]:
    """Parse config-file *text* into parsed values keyed by config key."""
    settings: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        if not sep:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {stripped!r}")
        key = key.strip()
        settings[key] = parse_value(key, value, f"{source}:{lineno}")
    return settings


def parse_config(
    text: str,
    source: str = "<config>",
    base: Optional[PipelineConfig] = None,
) -> PipelineConfig:
    """Build a :class:`PipelineConfig` from config-file text layered on *base* (default: defaults)."""
    return apply_settings(base or PipelineConfig(), parse_settings(text, source))


def load_config(path: Path, base: Optional[PipelineConfig] = None) -> PipelineConfig:
    """Load a config file.

    Raises:
        ConfigError: The file cannot be read, has an unknown key, an
            unparseable value, or fails validation.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"Cannot read config file {path}: {exc.strerror or exc}") from exc
    return parse_config(text, str(path), base)


def dump_config(config: PipelineConfig) -> str:
    """Render *config* in the config-file format; :func:`parse_config` reads it back unchanged."""
    lines = ["# rpys pipeline configuration"]
    for key, spec in KEYS.items():
        lines.append(f"{key} = {spec.render(_lookup(config, spec.path))}")
    return "\n".join(lines) + "\n"


def parse_override(item: str) -> tuple[str, Any]:
    """Parse one ``KEY=VALUE`` override from ``--set``."""
    key, sep, value = item.partition("=")
    if not sep:
        raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
    key = key.strip()
    return key, parse_value(key, value, "--set")


def env_var_name(key: str) -> str:
    """Environment variable overriding *key* (``filter.min_n_top`` -> ``RPYS_FILTER_MIN_N_TOP``)."""
    return _ENV_PREFIX + re.sub(r"[^A-Z0-9]", "_", key.upper())


def env_settings(environ: Optional[Mapping[str, str]] = None) -> dict[str, Any]:
    """Parsed values of every config key set through an ``RPYS_*`` variable."""
    env = os.environ if environ is None else environ
    settings: dict[str, Any] = {}
    for key in KEYS:
        name = env_var_name(key)
        if name in env:
            settings[key] = parse_value(key, env[name], name)
    return settings


def find_config_file(explicit: Optional[Path] = None) -> Optional[Path]:
    """Locate the config file to load.

    Order: *explicit* (``--config``), ``$RPYS_CONFIG``, ``./rpys.conf``,
    then ``<config_dir>/rpys.conf``. The first candidate wins; an explicit
    path must exist.
    """
    if explicit is not None:
        return explicit
    env_path = os.environ.get("RPYS_CONFIG")
    if env_path:
        return Path(env_path).expanduser()
    project = Path.cwd() / _PROJECT_CONFIG_FILENAME
    if project.is_file():
        return project
    user = get_config_dir() / _CONFIG_FILENAME
    if user.is_file():
        return user
    return None


def resolve_config(
    config_path: Optional[Path] = None,
    cli_settings: Optional[Mapping[str, Any]] = None,
) -> PipelineConfig:
    """Resolve the effective configuration.

    Precedence (high to low):
        1. CLI flags and ``--set`` overrides (*cli_settings*, parsed values)
        2. Environment variables (``RPYS_<KEY>``)
        3. Config file (see :func:`find_config_file`)
        4. Defaults
    """
    config = PipelineConfig()
    path = find_config_file(config_path)
    if path is not None:
        config = load_config(path, config)
    config = apply_settings(config, env_settings())
    return apply_settings(config, cli_settings or {})


def resolve_threads(environ: Optional[Mapping[str, str]] = None) -> int:
    """Worker thread cap from ``RPYS_THREADS`` (default: the CPU count).

    Raises:
        ConfigError: ``RPYS_THREADS`` is not a positive integer.
    """
    env = os.environ if environ is None else environ
    value = env.get("RPYS_THREADS", "").strip()
    if not value:
        return os.cpu_count() or 1
    try:
        threads = int(value)
    except ValueError:
        threads = 0
    if threads < 1:
        raise ConfigError(f"RPYS_THREADS must be a positive integer, got {value!r}")
    return threads


def cli_settings(
    options: Mapping[str, Any],
    set_items: Iterable[str] = (),
) -> dict[str, Any]:
    """Parsed settings from command-line flags.

    Args:
        options: Config key -> flag value; ``None`` means the flag was not
            given. Booleans are taken as-is, ``input`` as a list of paths,
            everything else is parsed like a config-file value.
        set_items: ``KEY=VALUE`` strings from ``--set``. Dedicated flags
            win over ``--set`` for the same key.
    """
    settings = dict(parse_override(item) for item in set_items)
    for key, value in options.items():
        if value is None:
            continue
        if key == "input":
            settings[key] = [str(path) for path in value]
        elif isinstance(value, bool):
            settings[key] = value
        else:
            settings[key] = parse_value(key, str(value), "command line")
    return settings
