"""Cluster spelling variants of the same cited reference and merge each cluster.

Variants are first blocked by reference publication year; only variants of
the same year are ever compared. Inside a block, clusters are the connected
components of the :func:`~rpys.dedup.similarity.pair_matches` graph, built
with a :class:`~rpys.dedup.disjoint_set.DisjointSet`. Matching is not
transitive, so a chain ``A ~ B ~ C`` ends up in one cluster even when
``A`` and ``C`` do not match directly.

Blocks are independent and can be processed on several threads. The result
never depends on input order or scheduling: members are ordered by raw
string and clusters by ``(rpy, first member)``.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

from rpys.dedup.disjoint_set import DisjointSet
from rpys.dedup.similarity import comparison_key, gates_agree, keys_match
from rpys.models import CitedRefVariant, ClusterConfig, ImportWindow, MergedCR
from rpys.parser.cited_ref import parse_cr

Cluster = list[CitedRefVariant]

_ANY_YEAR = ImportWindow(min_year=0, max_year=9999, include_missing_year=True)


def _variant_order(variant: CitedRefVariant) -> tuple[str, tuple[tuple[int, int], ...]]:
    return variant.raw, tuple(sorted(variant.counts_by_year.items()))


def _block_order(rpy: Optional[int]) -> tuple[bool, int]:
    return (rpy is not None, rpy if rpy is not None else 0)


def cluster_block(block: Sequence[CitedRefVariant], cfg: ClusterConfig) -> list[Cluster]:
    """Cluster the variants of a single RPY block.

    Candidates are visited in order of key length so the inner loop can
    stop as soon as the length difference alone rules out the threshold.
    """
    members = sorted(block, key=_variant_order)
    keys = [comparison_key(variant) for variant in members]
    threshold = cfg.threshold_fraction
    order = sorted(range(len(members)), key=lambda index: (len(keys[index]), index))
    forest = DisjointSet(len(members))

    for position, i in enumerate(order):
        length_i = len(keys[i])
        for j in order[position + 1:]:
            if threshold * len(keys[j]) > length_i:
                break
            if forest.find(i) == forest.find(j):
                continue
            if gates_agree(members[i], members[j], cfg) and keys_match(keys[i], keys[j], threshold):
                forest.union(i, j)

    return [[members[index] for index in group] for group in forest.groups()]


def cluster(
    variants: Iterable[CitedRefVariant],
    cfg: ClusterConfig,
    threads: int = 1,
) -> list[Cluster]:
    """Partition *variants* into clusters of the same cited work.

    Args:
        variants: Aggregated variants (any order).
        cfg: Threshold and field gates.
        threads: Worker threads for independent RPY blocks.

    Returns:
        Disjoint clusters covering every variant; no cluster spans two RPYs.
    """
    blocks: dict[Optional[int], list[CitedRefVariant]] = defaultdict(list)
    for variant in variants:
        blocks[variant.rpy].append(variant)
    ordered = [blocks[rpy] for rpy in sorted(blocks, key=_block_order)]

    if threads > 1 and len(ordered) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_block = list(pool.map(lambda block: cluster_block(block, cfg), ordered))
    else:
        per_block = [cluster_block(block, cfg) for block in ordered]

    return [group for groups in per_block for group in groups]


def merge(partition: Iterable[Cluster]) -> list[MergedCR]:
    """Collapse each cluster into one :class:`MergedCR`.

    The canonical string is the raw string of the member with the most
    occurrences; ties go to the lexicographically smallest raw string.
    Per-year counts are summed element-wise.
    """
    merged: list[MergedCR] = []
    for members in partition:
        if not members:
            continue
        canonical = min(members, key=lambda variant: (-variant.total_count, variant.raw))
        counts: Counter[int] = Counter()
        for member in members:
            counts.update(member.counts_by_year)
        merged.append(
            MergedCR(
                canonical_raw=canonical.raw,
                rpy=canonical.rpy,
                member_count=len(members),
                n_cr=sum(counts.values()),
                counts_by_year=dict(sorted(counts.items())),
            )
        )
    return merged


def as_variant(merged: MergedCR) -> CitedRefVariant:
    """Turn a merged reference back into a variant carrying the summed counts.

    Used to re-cluster already merged output; the fields are re-parsed from
    the canonical raw string.
    """
    variant = parse_cr(merged.canonical_raw, _ANY_YEAR) or CitedRefVariant(raw=merged.canonical_raw)
    variant.rpy = merged.rpy
    variant.counts_by_year = dict(merged.counts_by_year)
    return variant


def format_cluster_dump(merged: Iterable[MergedCR]) -> Iterator[str]:
    """Yield one audit line per cluster: ``rpy<TAB>member_count<TAB>canonical_raw``."""
    for item in merged:
        rpy = "" if item.rpy is None else str(item.rpy)
        yield f"{rpy}\t{item.member_count}\t{item.canonical_raw}"
