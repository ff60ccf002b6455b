"""Labeled-graph enumeration and random graph generation at desk scale.

The exhaustive searches encode a graph on ``n`` vertices as an integer mask
over the ``n(n-1)/2`` vertex pairs in row-major upper-triangle order, which
lets the hot loops run as vectorised numpy batches.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator

import numpy as np

from .errors import InputError
from .graphs import Graph, complement

_POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)


def pair_order(n: int) -> list[tuple[int, int]]:
    """Canonical bit order of vertex pairs: bit b is pair_order(n)[b]."""
    return list(combinations(range(n), 2))


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def labeled_graph_count(n: int) -> int:
    return 1 << num_pairs(n)


def popcount(masks: np.ndarray) -> np.ndarray:
    """Vectorised popcount for unsigned integer arrays up to 64 bits."""
    masks = np.asarray(masks, dtype=np.uint64)
    total = np.zeros(masks.shape, dtype=np.uint8)
    for shift in (0, 16, 32, 48):
        total += _POP16[(masks >> np.uint64(shift)).astype(np.uint64) & np.uint64(0xFFFF)]
    return total


def mask_to_graph(n: int, mask: int) -> Graph:
    pairs = pair_order(n)
    rows = [0] * n
    mask = int(mask)
    b = 0
    while mask:
        if mask & 1:
            u, v = pairs[b]
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        mask >>= 1
        b += 1
    return Graph(n, tuple(rows))


def labeled_graphs(n: int) -> Iterator[Graph]:
    """All labeled graphs on n vertices, in mask order."""
    for mask in range(labeled_graph_count(n)):
        yield mask_to_graph(n, mask)


def adjacency_batch(n: int, masks: np.ndarray) -> np.ndarray:
    """Stack of dense adjacency matrices for the given graph masks."""
    masks = np.asarray(masks, dtype=np.uint64)
    m = num_pairs(n)
    shifts = np.arange(m, dtype=np.uint64)
    bits = ((masks[:, None] >> shifts[None, :]) & np.uint64(1)).astype(float)
    pairs = pair_order(n)
    iu = np.array([p[0] for p in pairs], dtype=np.intp)
    ju = np.array([p[1] for p in pairs], dtype=np.intp)
    a = np.zeros((len(masks), n, n))
    a[:, iu, ju] = bits
    a[:, ju, iu] = bits
    return a


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi style sample with edge probability p."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise InputError("need n >= 0 and 0 <= p <= 1")
    upper = np.triu(rng.random((n, n)) < p, k=1)
    return Graph.from_adjacency(upper | upper.T)


def circulant_graph(n: int, offsets) -> Graph:
    edges = []
    for off in offsets:
        if not 1 <= off <= n // 2:
            raise InputError(f"circulant offset {off} out of range for n={n}")
        for i in range(n):
            edges.append((i, (i + off) % n))
    return Graph.from_edges(n, edges)


def circulant_regular(n: int, d: int) -> Graph:
    """Deterministic d-regular graph on n vertices via circulant offsets."""
    if not 0 <= d < n:
        raise InputError(f"no {d}-regular graph on {n} vertices")
    if (n * d) % 2:
        raise InputError(f"no {d}-regular graph on {n} vertices (odd degree sum)")
    offsets = list(range(1, d // 2 + 1))
    if d % 2:
        offsets.append(n // 2)
    return circulant_graph(n, offsets)


def random_regular_graph(n: int, d: int, rng: np.random.Generator, retries: int = 200) -> Graph:
    """Random d-regular graph by pairing half-edges, circulant fallback."""
    if not 0 <= d < n or (n * d) % 2:
        raise InputError(f"no {d}-regular graph on {n} vertices")
    if d == 0:
        return Graph(n, (0,) * n)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(retries):
        rng.shuffle(stubs)
        rows = [0] * n
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = int(stubs[i]), int(stubs[i + 1])
            if u == v or rows[u] >> v & 1:
                ok = False
                break
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        if ok:
            return Graph(n, tuple(rows))
    return circulant_regular(n, d)


def regular_graphs(n: int, d: int) -> Iterator[Graph]:
    """All labeled d-regular graphs on n vertices (backtracking generator)."""
    if n <= 0 or d < 0 or d > n - 1 or (n * d) % 2:
        return
    if d > (n - 1) // 2:
        # Generate the sparser complements and flip; halves the worst case.
        for g in regular_graphs(n, n - 1 - d):
            yield complement(g)
        return

    rows = [0] * n
    rem = [d] * n

    def fill(v: int) -> Iterator[Graph]:
        if v == n:
            yield Graph(n, tuple(rows))
            return
        need = rem[v]
        candidates = [u for u in range(v + 1, n) if rem[u] > 0]
        if need > len(candidates):
            return
        if need == 0:
            yield from fill(v + 1)
            return
        for combo in combinations(candidates, need):
            for u in combo:
                rows[v] |= 1 << u
                rows[u] |= 1 << v
                rem[u] -= 1
            rem[v] = 0
            # Prune: remaining stubs must pair up among v+1..n-1.
            tail = rem[v + 1 :]
            total = sum(tail)
            if total % 2 == 0 and (not tail or 2 * max(tail) <= total):
                yield from fill(v + 1)
            rem[v] = need
            for u in combo:
                rows[v] &= ~(1 << u)
                rows[u] &= ~(1 << v)
                rem[u] += 1

    yield from fill(0)


@lru_cache(maxsize=64)
def regular_graph_count(n: int, d: int) -> int:
    return sum(1 for _ in regular_graphs(n, d))
