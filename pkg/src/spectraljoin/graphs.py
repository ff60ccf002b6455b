"""Immutable simple graphs stored as per-vertex adjacency bitmasks.

A vertex set is always ``{0, .., n-1}``.  Bit ``j`` of ``rows[i]`` is set iff
``ij`` is an edge, so neighbourhood intersections used by the regular-set
search are single ``&`` operations.  Graphs are hashable and safe to share
between workers; every "mutation" below returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Use the classmethods to build instances; the raw constructor only runs
    cheap shape checks and trusts the caller to pass symmetric rows.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("vertex count must be non-negative")
        if len(self.rows) != self.n:
            raise InputError("expected one adjacency row per vertex")
        acc = 0
        for i, row in enumerate(self.rows):
            if row >> i & 1:
                raise InputError(f"self-loop at vertex {i}")
            acc |= row
        if acc >> self.n:
            raise InputError("adjacency row refers to a vertex out of range")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph from an unordered edge list; duplicates collapse."""
        rows = [0] * n
        for edge in edges:
            u, v = edge
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop ({u},{v}) is not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_adjacency(cls, a) -> "Graph":
        """Build a graph from a symmetric 0/1 matrix with empty diagonal."""
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputError("adjacency matrix must be square")
        b = a != 0
        if not np.array_equal(b, b.T):
            raise InputError("adjacency matrix must be symmetric")
        if b.diagonal().any():
            raise InputError("adjacency matrix must have an empty diagonal")
        n = b.shape[0]
        if n == 0:
            return cls(0, ())
        packed = np.packbits(b, axis=1, bitorder="little")
        rows = tuple(int.from_bytes(packed[i].tobytes(), "little") for i in range(n))
        return cls(n, rows)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.rows[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.rows)

    @cached_property
    def num_edges(self) -> int:
        return sum(self.degrees) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) pairs with u < v, in lexicographic order."""
        out = []
        for u in range(self.n):
            row = self.rows[u] >> (u + 1)
            v = u + 1
            while row:
                if row & 1:
                    out.append((u, v))
                row >>= 1
                v += 1
        return out

    @cached_property
    def _adjacency_bool(self) -> np.ndarray:
        # Shared read-only cache; callers inside the package must not write.
        nbytes = (self.n + 7) // 8
        if self.n == 0:
            return np.zeros((0, 0), dtype=bool)
        buf = b"".join(row.to_bytes(nbytes, "little") for row in self.rows)
        bits = np.unpackbits(
            np.frombuffer(buf, dtype=np.uint8).reshape(self.n, nbytes),
            axis=1,
            bitorder="little",
        )
        return bits[:, : self.n].astype(bool)

    def adjacency(self) -> np.ndarray:
        """Dense adjacency matrix as a fresh float array."""
        return self._adjacency_bool.astype(float)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def average_degree(self) -> float:
        return 2.0 * self.num_edges / self.n if self.n else 0.0

    def is_regular(self) -> bool:
        return len(set(self.degrees)) <= 1

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, edges={self.edges()})"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class VertexSet:
    """Subset of the vertices of a graph of order n, stored as a bitmask."""

    n: int
    mask: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("parent size must be non-negative")
        if self.mask < 0 or self.mask >> self.n:
            raise InputError("membership mask out of range for parent size")

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]) -> "VertexSet":
        mask = 0
        for v in members:
            if not 0 <= v < n:
                raise InputError(f"vertex {v} out of range for n={n}")
            mask |= 1 << v
        return cls(n, mask)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << n) - 1)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(_bits(self.mask))

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def is_full(self) -> bool:
        return self.mask == (1 << self.n) - 1

    def contains(self, v: int) -> bool:
        return bool(self.mask >> v & 1)

    def complement(self) -> "VertexSet":
        return VertexSet(self.n, ((1 << self.n) - 1) ^ self.mask)

    def char_vector(self) -> np.ndarray:
        """0/1 indicator vector of the membership."""
        x = np.zeros(self.n)
        for v in self.members:
            x[v] = 1.0
        return x


# ---------------------------------------------------------------------------
# standard families


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << i) for i in range(n)))


def null_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return Graph.from_edges(n, edges)


def complete_bipartite(p: int, q: int) -> Graph:
    if p < 1 or q < 1:
        raise InputError("both parts of a complete bipartite graph need >= 1 vertex")
    edges = [(i, p + j) for i in range(p) for j in range(q)]
    return Graph.from_edges(p + q, edges)


_FAMILIES = {
    "complete": complete_graph,
    "null": null_graph,
    "path": path_graph,
    "cycle": cycle_graph,
    "complete_bipartite": complete_bipartite,
}


def standard_family(kind: str, *params: int) -> Graph:
    """Dispatch to a named family: complete, null, path, cycle, complete_bipartite."""
    try:
        builder = _FAMILIES[kind]
    except KeyError:
        raise InputError(f"unknown family {kind!r}") from None
    return builder(*params)


# ---------------------------------------------------------------------------
# structural constructions


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple((full ^ row) & ~(1 << i) for i, row in enumerate(g.rows)))


def line_graph(g: Graph) -> Graph:
    """Line graph with one vertex per edge of g, ordered lexicographically."""
    es = g.edges()
    m = len(es)
    rows = [0] * m
    for a in range(m):
        ua, va = es[a]
        for b in range(a + 1, m):
            ub, vb = es[b]
            if ua == ub or ua == vb or va == ub or va == vb:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
    return Graph(m, tuple(rows))


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Induced subgraph on the given vertices, renumbered in the given order."""
    for v in vertices:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range")
    if len(set(vertices)) != len(vertices):
        raise InputError("vertices for an induced subgraph must be distinct")
    index = {v: i for i, v in enumerate(vertices)}
    rows = [0] * len(vertices)
    for v, i in index.items():
        row = g.rows[v]
        for u in _bits(row):
            j = index.get(u)
            if j is not None:
                rows[i] |= 1 << j
    return Graph(len(vertices), tuple(rows))


def delete_vertex(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range")
    return induced_subgraph(g, [u for u in range(g.n) if u != v])


def is_connected(g: Graph) -> bool:
    """True iff every pair of vertices is joined by a path (n <= 1 counts)."""
    if g.n <= 1:
        return True
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        rest = frontier
        while rest:
            low = rest & -rest
            rest ^= low
            reach |= g.rows[low.bit_length() - 1]
        frontier = reach & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1
