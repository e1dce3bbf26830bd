"""Disjoint-set forest over integer element ids (union by rank, path compression)."""

from __future__ import annotations

from collections import defaultdict


class DisjointSet:
    """Union-find over the elements ``0 .. size - 1``.

    Args:
        size: Number of elements; each starts in its own set.
    """

    def __init__(self, size: int) -> None:
        self._parent = list(range(size))
        self._rank = [0] * size

    def find(self, element: int) -> int:
        """Return the representative of *element*'s set, compressing the path."""
        root = element
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[element] != root:
            self._parent[element], element = root, self._parent[element]
        return root

    def union(self, x: int, y: int) -> bool:
        """Merge the sets of *x* and *y*. Returns False if they were already joined."""
        x_root = self.find(x)
        y_root = self.find(y)
        if x_root == y_root:
            return False
        if self._rank[x_root] < self._rank[y_root]:
            x_root, y_root = y_root, x_root
        self._parent[y_root] = x_root
        if self._rank[x_root] == self._rank[y_root]:
            self._rank[x_root] += 1
        return True

    def groups(self) -> list[list[int]]:
        """All sets as sorted element lists, ordered by their smallest element."""
        sets: dict[int, list[int]] = defaultdict(list)
        for element in range(len(self._parent)):
            sets[self.find(element)].append(element)
        return sorted(sets.values(), key=lambda group: group[0])
