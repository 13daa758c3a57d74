"""Brute-force reference computations.

These are deliberately naive and share no search machinery with the solvers
they check.  They are only practical on very small graphs.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, product

from .graph import Graph


def _palette(g: Graph) -> int:
    return max(1, 2 * g.n - 4)


def _edge_order(g: Graph) -> list[int]:
    # finish vertices early so the completion check fires as soon as possible
    order, seen = [], set()
    for v in sorted(range(g.n), key=lambda v: -g.degree(v)):
        for _, e in g.adjacency[v]:
            if e not in seen:
                seen.add(e)
                order.append(e)
    return order


def brute_interval_colouring(g: Graph, palette: int | None = None, alpha=1):
    """Enumerate proper colourings with colours 1..palette; return the first
    one whose incident colours at every vertex fit the (alpha-)window.

    The window test is applied to a vertex only once all its edges are
    coloured.  Returns None when no colouring exists in the palette.
    """
    if palette is None:
        palette = _palette(g)
    alpha = Fraction(alpha)
    order = _edge_order(g)
    last = {}
    for pos, e in enumerate(order):
        for x in g.edges[e]:
            last[x] = pos
    finishing = [[] for _ in order]
    for x, pos in last.items():
        finishing[pos].append(x)
    col = [0] * g.m

    def ok_at(x):
        cols = [col[e] for _, e in g.adjacency[x]]
        return max(cols) - min(cols) + 1 <= math.floor(alpha * len(cols))

    def rec(i):
        if i == len(order):
            return True
        e = order[i]
        u, v = g.edges[e]
        taken = {col[f] for _, f in g.adjacency[u]} | {col[f] for _, f in g.adjacency[v]}
        for c in range(1, palette + 1):
            if c in taken:
                continue
            col[e] = c
            if all(ok_at(x) for x in finishing[i]) and rec(i + 1):
                return True
            col[e] = 0
        return False

    return tuple(col) if rec(0) else None


def brute_t(g: Graph, palette: int | None = None) -> int | None:
    """Largest number of distinct colours over interval colourings in the palette."""
    if palette is None:
        palette = _palette(g)
    best = None
    for cols in product(range(1, palette + 1), repeat=g.m):
        good = True
        for v in range(g.n):
            inc = [cols[e] for _, e in g.adjacency[v]]
            if inc and (len(set(inc)) != len(inc) or max(inc) - min(inc) != len(inc) - 1):
                good = False
                break
        if good:
            k = len(set(cols))
            best = k if best is None else max(best, k)
    return best


def brute_max_cut(g: Graph) -> int:
    best = 0
    for bits in range(1 << max(g.n - 1, 0)):
        best = max(best, sum(1 for u, v in g.edges if (bits >> u & 1) != (bits >> v & 1)))
    return best


def has_odd_cycle(g: Graph) -> bool:
    """DFS parity labelling; a same-parity edge closes an odd cycle."""
    depth = [-1] * g.n
    for s in range(g.n):
        if depth[s] >= 0:
            continue
        depth[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w, _ in g.adjacency[v]:
                if depth[w] < 0:
                    depth[w] = depth[v] + 1
                    stack.append(w)
                elif (depth[w] - depth[v]) % 2 == 0:
                    return True
    return False


def all_simple_paths(g: Graph, s: int, t: int):
    path = [s]
    on = {s}

    def rec(v):
        if v == t:
            yield list(path)
            return
        for w, _ in g.adjacency[v]:
            if w not in on:
                on.add(w)
                path.append(w)
                yield from rec(w)
                path.pop()
                on.discard(w)

    yield from rec(s)


def brute_degree_sum_distance(g: Graph, s: int, t: int):
    best = math.inf
    for p in all_simple_paths(g, s, t):
        best = min(best, sum(g.degree(x) for x in p))
    return best


def brute_arboricity(g: Graph) -> int:
    """Nash-Williams: max over vertex subsets of ceil(e(S) / (|S| - 1))."""
    best = 0
    for r in range(2, g.n + 1):
        for s in combinations(range(g.n), r):
            cs = set(s)
            e = sum(1 for u, v in g.edges if u in cs and v in cs)
            best = max(best, -(-e // (r - 1)))
    return best


def brute_sparsity(g: Graph, k) -> bool:
    k = Fraction(k)
    for r in range(3, g.n + 1):
        for s in combinations(range(g.n), r):
            cs = set(s)
            e = sum(1 for u, v in g.edges if u in cs and v in cs)
            if e > k * (r - 2):
                return False
    return True


def brute_theta(g: Graph, k_max: int):
    """Smallest k such that some k-part edge partition has colourable parts."""
    from .graph import subgraph

    cache = {}

    def colourable(mask):
        if mask not in cache:
            h = subgraph(g, [i for i in range(g.m) if mask >> i & 1]).graph
            cache[mask] = brute_interval_colouring(h) is not None
        return cache[mask]

    if g.m == 0:
        return 0
    for k in range(1, k_max + 1):
        for labels in product(range(k), repeat=g.m):
            masks = [0] * k
            for i, lab in enumerate(labels):
                masks[lab] |= 1 << i
            if all(colourable(mk) for mk in masks):
                return k
    return None
