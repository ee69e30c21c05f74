"""Bitset helpers shared by the exact solvers.  Sets of indices are Python ints."""

from __future__ import annotations

from typing import Iterator, Sequence


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class IndexedEdges:
    """Edges indexed 0..m-1 with per-vertex incidence masks.

    ``inc[p][x]`` is the mask of edges whose coordinate ``p`` (0-based) equals
    symbol ``x + 1``.
    """

    __slots__ = ("edges", "sizes", "inc", "all")

    def __init__(self, edges: Sequence[tuple[int, ...]], sizes: Sequence[int]):
        self.edges = list(edges)
        self.sizes = tuple(sizes)
        self.inc = [[0] * n for n in self.sizes]
        for i, e in enumerate(self.edges):
            bit = 1 << i
            for p, a in enumerate(e):
                self.inc[p][a - 1] |= bit
        self.all = (1 << len(self.edges)) - 1

    def conflict(self, i: int) -> int:
        """Edges sharing at least one vertex with edge ``i`` (including ``i``)."""
        m = 0
        inc = self.inc
        for p, a in enumerate(self.edges[i]):
            m |= inc[p][a - 1]
        return m

    def greedy_matching(self, mask: int) -> int:
        count = 0
        while mask:
            i = lowest(mask)
            mask &= ~self.conflict(i)
            count += 1
        return count

    def symbols_available(self, mask: int) -> int:
        """min over parts of the number of symbols still carried by ``mask``."""
        best = None
        for row in self.inc:
            c = 0
            for m in row:
                if m & mask:
                    c += 1
            if best is None or c < best:
                best = c
        return best or 0
