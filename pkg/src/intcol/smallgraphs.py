"""All graphs on a few vertices, one per isomorphism class.

Graphs on n vertices are generated by attaching a new vertex, with every
possible neighbourhood, to each graph on n - 1 vertices; every graph arises
this way by deleting its last vertex.  Duplicates are removed with an exact
canonical form: the smallest edge bitmask over all vertex permutations.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .graph import Graph, components

MAX_N = 7
# OEIS A000088 and A001349
GRAPH_COUNTS = (1, 1, 2, 4, 11, 34, 156, 1044)
CONNECTED_COUNTS = (1, 1, 1, 2, 6, 21, 112, 853)


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


@lru_cache(maxsize=None)
def _perm_weights(n: int) -> np.ndarray:
    """weights[p, e] = bit value of edge e after applying permutation p."""
    pairs = _pairs(n)
    pos = {p: i for i, p in enumerate(pairs)}
    perms = list(permutations(range(n)))
    # float64 is exact here (masks < 2**21) and lets the product use BLAS
    w = np.zeros((len(perms), len(pairs)), dtype=np.float64)
    for pi, p in enumerate(perms):
        for ei, (u, v) in enumerate(pairs):
            a, b = p[u], p[v]
            w[pi, ei] = 1 << pos[(a, b) if a < b else (b, a)]
    return w


def canonical_masks(n: int, masks: np.ndarray, chunk: int = 512) -> np.ndarray:
    """Canonical edge bitmask for each input mask (edges indexed as in _pairs)."""
    npairs = n * (n - 1) // 2
    if npairs == 0:
        return np.zeros(len(masks), dtype=np.int64)
    w = _perm_weights(n)
    bits = ((masks[:, None] >> np.arange(npairs)) & 1).astype(np.float64)
    out = np.empty(len(masks), dtype=np.int64)
    for s in range(0, len(masks), chunk):
        out[s : s + chunk] = (bits[s : s + chunk] @ w.T).min(axis=1)
    return out


@lru_cache(maxsize=None)
def _canonical_set(n: int) -> tuple[int, ...]:
    if n <= 1:
        return (0,)
    prev = _canonical_set(n - 1)
    old_pairs = _pairs(n - 1)
    pairs = _pairs(n)
    pos = {p: i for i, p in enumerate(pairs)}
    remap = [1 << pos[p] for p in old_pairs]
    new_bits = [1 << pos[(u, n - 1)] for u in range(n - 1)]
    cands = []
    for mask in prev:
        base = 0
        for i, bit in enumerate(remap):
            if mask >> i & 1:
                base |= bit
        for nb in range(1 << (n - 1)):
            m = base
            for u in range(n - 1):
                if nb >> u & 1:
                    m |= new_bits[u]
            cands.append(m)
    canon = canonical_masks(n, np.array(cands, dtype=np.int64))
    return tuple(sorted(set(int(x) for x in canon)))


def graph_from_mask(n: int, mask: int) -> Graph:
    return Graph(n, tuple(p for i, p in enumerate(_pairs(n)) if mask >> i & 1))


def all_graphs(n: int, connected: bool = False) -> list[Graph]:
    """Every graph on exactly n vertices up to isomorphism (n <= 7)."""
    if n > MAX_N:
        raise ValueError(f"enumeration supported up to n = {MAX_N}")
    out = []
    for mask in _canonical_set(n):
        g = graph_from_mask(n, mask)
        if connected and len(components(g)) != 1:
            continue
        out.append(g)
    out.sort(key=lambda g: (g.m, g.edges))
    return out


def graphs_up_to(n_max: int, connected: bool = False, min_n: int = 1) -> list[Graph]:
    out = []
    for n in range(min_n, n_max + 1):
        out.extend(all_graphs(n, connected))
    return out


def canonical_key(g: Graph) -> tuple[int, int]:
    """Isomorphism-invariant key for graphs with at most MAX_N vertices."""
    pos = {p: i for i, p in enumerate(_pairs(g.n))}
    mask = 0
    for u, v in g.edges:
        mask |= 1 << pos[(u, v) if u < v else (v, u)]
    return g.n, int(canonical_masks(g.n, np.array([mask], dtype=np.int64))[0])
