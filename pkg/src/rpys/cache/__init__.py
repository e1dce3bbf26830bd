"""Disk-based caching of merged citation matrices.

This package provides :class:`MatrixCache`, which stores the output of the
ingest, cluster and merge stages on disk using :mod:`diskcache`, keyed by
input file content and the settings of those stages. It is consulted by
:func:`~rpys.pipeline.runner.run_pipeline` when ``cache = true``.
"""

from rpys.cache.cache import CachedCorpus, MatrixCache, file_digest

__all__ = ["CachedCorpus", "MatrixCache", "file_digest"]
