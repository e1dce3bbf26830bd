"""Cited-reference deduplication -- cluster spelling variants and merge them.

Sub-modules:

* :mod:`~rpys.dedup.similarity` -- Comparison key, normalised Levenshtein
  similarity, field gates.
* :mod:`~rpys.dedup.disjoint_set` -- Union-find used for connected components.
* :mod:`~rpys.dedup.cluster` -- RPY blocking, clustering and merging.
"""

from rpys.dedup.cluster import as_variant, cluster, format_cluster_dump, merge
from rpys.dedup.similarity import comparison_key, pair_matches, similarity

__all__ = [
    "as_variant",
    "cluster",
    "comparison_key",
    "format_cluster_dump",
    "merge",
    "pair_matches",
    "similarity",
]
