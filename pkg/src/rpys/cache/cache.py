"""Disk-based caching of the ingest and clustering stages.

Uses :mod:`diskcache` to persist the merged citation matrix of a run so a
re-run on the same inputs (for instance with a different percentile level,
filter or sort order) skips parsing, clustering and merging.

Cache keys are SHA-256 hashes over the content digests of the input files
and every configuration value that influences ingest and clustering. The
matrix is stored in its ``RPYSMX1`` binary layout next to the ingest
counters, so a hit reproduces the exact same output bytes.

See Also:
    :func:`~rpys.indicators.matrix.encode_matrix` -- the stored layout.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Sequence
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

import diskcache

from rpys.exceptions import InputError
from rpys.indicators.matrix import CitationMatrix, decode_matrix, encode_matrix
from rpys.models import ParseStats, PipelineConfig

_FORMAT_VERSION = 1
_CHUNK = 1 << 20


@dataclass(frozen=True)
class CachedCorpus:
    """Everything the pipeline needs after the merge stage."""

    matrix: CitationMatrix
    parse_stats: ParseStats
    variants: int
    linked_ratio: Fraction


def file_digest(path: Path) -> str:
    """SHA-256 hex digest of a file's content.

    Raises:
        InputError: The file cannot be read.
    """
    digest = hashlib.sha256()
    try:
        with path.open("rb") as handle:
            for chunk in iter(lambda: handle.read(_CHUNK), b""):
                digest.update(chunk)
    except OSError as exc:
        raise InputError(exc.strerror or str(exc), path=str(path)) from exc
    return digest.hexdigest()


class MatrixCache:
    """Disk-backed cache of merged citation matrices.

    Args:
        cache_dir: Root directory for the cache. A ``matrices/``
            subdirectory is created inside it.
        enabled: When False every lookup misses and nothing is stored.

    Example::

        from rpys.cache import MatrixCache

        cache = MatrixCache(get_cache_dir(), enabled=config.cache)
        key = cache.make_key(config.inputs, config)
        hit = cache.get(key)
    """

    def __init__(self, cache_dir: str | Path, enabled: bool = True) -> None:
        self._enabled = enabled
        self._cache_dir = Path(cache_dir)
        self._cache: Optional[diskcache.Cache] = None
        if enabled:
            self._cache = diskcache.Cache(str(self._cache_dir / "matrices"))

    @property
    def enabled(self) -> bool:
        return self._enabled

    def make_key(self, inputs: Sequence[Path], config: PipelineConfig) -> str:
        """Key for *inputs* processed under the ingest and cluster settings of *config*."""
        settings = {
            "version": _FORMAT_VERSION,
            "files": [file_digest(path) for path in inputs],
            "py": config.py_window.model_dump(),
            "rpy": config.rpy_window.model_dump(),
            "max_cr": config.max_cr,
            "doc_type": config.doc_type_filter,
            "cluster": config.cluster.model_dump(),
        }
        raw = json.dumps(settings, sort_keys=True)
        return hashlib.sha256(raw.encode()).hexdigest()

    def get(self, key: str) -> Optional[CachedCorpus]:
        """Look up a cached corpus.

        Returns:
            The cached corpus on a hit, or ``None`` on a miss, when caching
            is disabled, or when the stored entry cannot be decoded (the
            entry is then dropped).
        """
        if self._cache is None:
            return None
        entry = self._cache.get(key)
        if entry is None:
            return None
        try:
            return CachedCorpus(
                matrix=decode_matrix(entry["matrix"]),
                parse_stats=ParseStats(**entry["parse_stats"]),
                variants=int(entry["variants"]),
                linked_ratio=Fraction(entry["linked_ratio"]),
            )
        except (KeyError, TypeError, ValueError):
            self._cache.delete(key)
            return None

    def set(self, key: str, corpus: CachedCorpus) -> None:
        """Store *corpus* under *key*. A no-op when caching is disabled."""
        if self._cache is None:
            return
        self._cache.set(
            key,
            {
                "matrix": encode_matrix(corpus.matrix),
                "parse_stats": asdict(corpus.parse_stats),
                "variants": corpus.variants,
                "linked_ratio": str(corpus.linked_ratio),
            },
        )

    def invalidate(self, key: str) -> None:
        """Remove a specific cache entry."""
        if self._cache is not None:
            self._cache.delete(key)

    def clear(self) -> int:
        """Remove all entries from the cache. Returns the number removed."""
        if self._cache is None:
            return 0
        return int(self._cache.clear())

    def stats(self) -> dict[str, Any]:
        """Return cache statistics.

        Returns:
            A ``dict`` with ``enabled`` (bool), and when enabled: ``size``
            (number of entries), ``volume`` (bytes on disk) and ``directory``.
        """
        if self._cache is None:
            return {"enabled": False}
        return {
            "enabled": True,
            "size": len(self._cache),
            "volume": self._cache.volume(),
            "directory": str(self._cache_dir / "matrices"),
        }

    def close(self) -> None:
        """Close the underlying :class:`diskcache.Cache` and release resources."""
        if self._cache is not None:
            self._cache.close()
