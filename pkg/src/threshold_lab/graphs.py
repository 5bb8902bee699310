"""Immutable simple graphs over vertices 0..n-1 with bitmask adjacency rows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import DomainError


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph.

    ``adj[v]`` is the neighbourhood of ``v`` as a bitmask. The representation
    is validated on construction: symmetric, loopless, and in range.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("vertex count must be non-negative")
        if len(self.adj) != self.n:
            raise DomainError("adjacency table length must equal vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise DomainError(f"vertex {v} has a neighbour out of range")
            if row >> v & 1:
                raise DomainError(f"loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise DomainError(f"asymmetric edge {v}-{u}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def empty(n: int) -> "Graph":
        return Graph(n, (0,) * n)

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    @staticmethod
    def complete(n: int) -> "Graph":
        full = (1 << n) - 1
        return Graph(n, tuple(full ^ (1 << v) for v in range(n)))

    @staticmethod
    def cycle(n: int) -> "Graph":
        if n < 3:
            raise DomainError("a cycle needs at least 3 vertices")
        return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])

    @staticmethod
    def path(n: int) -> "Graph":
        return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])

    @staticmethod
    def complete_multipartite(sizes: Iterable[int]) -> "Graph":
        sizes = list(sizes)
        n = sum(sizes)
        rows = [0] * n
        start = 0
        full = (1 << n) - 1
        for size in sizes:
            part = ((1 << size) - 1) << start
            for v in range(start, start + size):
                rows[v] = full & ~part
            start += size
        return Graph(n, tuple(rows))

    # -- basic accessors ---------------------------------------------------

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def min_degree(self) -> int:
        return min((self.degree(v) for v in range(self.n)), default=0)

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def neighbours(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def common_neighbourhood(self, vertices: Iterable[int]) -> int:
        """Bitmask of vertices adjacent to every vertex in ``vertices``."""
        mask = (1 << self.n) - 1
        for v in vertices:
            mask &= self.adj[v]
        return mask

    # -- derived graphs ----------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph on ``vertices``, relabelled in ascending order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        rows = [0] * len(keep)
        for v in keep:
            for u in bits(self.adj[v]):
                if u in index:
                    rows[index[v]] |= 1 << index[u]
        return Graph(len(keep), tuple(rows))

    def induced_mask(self, mask: int) -> "Graph":
        return self.induced(bits(mask))

    def without(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    def relabel(self, perm: list[int]) -> "Graph":
        """Relabel so that old vertex ``perm[i]`` becomes new vertex ``i``."""
        pos = {v: i for i, v in enumerate(perm)}
        rows = [0] * self.n
        for i, v in enumerate(perm):
            for u in bits(self.adj[v]):
                rows[i] |= 1 << pos[u]
        return Graph(self.n, tuple(rows))

    def edge_count_within(self, mask: int) -> int:
        return sum((self.adj[v] & mask).bit_count() for v in bits(mask)) // 2

    def edge_count_between(self, mask_a: int, mask_b: int) -> int:
        return sum((self.adj[v] & mask_b).bit_count() for v in bits(mask_a))

    # -- structure predicates ----------------------------------------------

    def components(self) -> list[list[int]]:
        seen = 0
        out = []
        for start in range(self.n):
            if seen >> start & 1:
                continue
            frontier = 1 << start
            comp = 0
            while frontier:
                comp |= frontier
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
            seen |= comp
            out.append(list(bits(comp)))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_forest(self) -> bool:
        """True iff the graph is acyclic."""
        return all(
            self.induced(comp).edge_count() == len(comp) - 1
            for comp in self.components()
        )

    def is_independent(self, mask: int) -> bool:
        rest = mask
        for v in bits(mask):
            rest ^= 1 << v
            if self.adj[v] & rest:
                return False
        return True


def is_bipartite(g: Graph) -> Optional[tuple[list[int], list[int]]]:
    """Return a two-part vertex partition if one exists, ``None`` otherwise."""
    colour = [-1] * g.n
    for start in range(g.n):
        if colour[start] >= 0:
            continue
        colour[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for u in bits(g.adj[v]):
                if colour[u] < 0:
                    colour[u] = colour[v] ^ 1
                    queue.append(u)
                elif colour[u] == colour[v]:
                    return None
    return (
        [v for v in range(g.n) if colour[v] == 0],
        [v for v in range(g.n) if colour[v] == 1],
    )


def is_forest(g: Graph) -> bool:
    return g.is_forest()
