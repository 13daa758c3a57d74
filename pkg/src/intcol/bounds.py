"""Upper bounds on the number of colours of an interval colouring.

``check_sparsity`` decides whether every subgraph on at least three vertices
has at most ``k(|V(H)| - 2)`` edges; ``check_t_bounds`` evaluates every known
bound that applies to a graph.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph

ENUMERATION_CUTOFF = 20
SPARSITY_KS = (Fraction(2), Fraction(5, 2), Fraction(3), Fraction(7, 2), Fraction(4))


def _subset_edge_counts(g: Graph) -> np.ndarray:
    """Edge count of G[S] for every vertex subset S, indexed by bitmask."""
    counts = np.zeros(1 << g.n, dtype=np.int32)
    nbr = [0] * g.n
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    for v in range(g.n):
        lo = 1 << v
        # subsets whose highest vertex is v: e(S) = e(S - v) + |N(v) & S|
        base = np.arange(lo, dtype=np.int64)
        inter = base & nbr[v]
        pc = np.zeros(lo, dtype=np.int32)
        x = inter.copy()
        while x.any():
            pc += (x & 1).astype(np.int32)
            x >>= 1
        counts[lo : 2 * lo] = counts[:lo] + pc
    return counts


def _popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.int32)
    for v in range(n):
        lo = 1 << v
        pc[lo : 2 * lo] = pc[:lo] + 1
    return pc


def max_excess_enumerate(g: Graph, k) -> Fraction | None:
    """max over |S| >= 3 of e(G[S]) - k(|S| - 2), by subset enumeration."""
    if g.n < 3:
        return None
    k = Fraction(k)
    counts = _subset_edge_counts(g).astype(np.int64)
    sizes = _popcounts(g.n).astype(np.int64)
    ok = sizes >= 3
    # scale by the denominator to stay in integers
    num, den = k.numerator, k.denominator
    excess = counts[ok] * den - num * (sizes[ok] - 2)
    return Fraction(int(excess.max()), den)


def _max_closure_value(g: Graph, k: Fraction, forced: tuple[int, ...]):
    """max over S containing ``forced`` of e(G[S]) - k|S|, and a maximiser."""
    import networkx as nx

    num, den = k.numerator, k.denominator
    big = den * (g.m + 1) + num * (g.n + 1)
    net = nx.DiGraph()
    s, t = "s", "t"
    net.add_node(s)
    net.add_node(t)
    for i, (u, v) in enumerate(g.edges):
        net.add_edge(s, ("e", i), capacity=den)
        net.add_edge(("e", i), ("v", u), capacity=big)
        net.add_edge(("e", i), ("v", v), capacity=big)
    for v in range(g.n):
        net.add_edge(("v", v), t, capacity=num)
    for v in forced:
        net.add_edge(s, ("v", v), capacity=big)
    cut, (source_side, _) = nx.minimum_cut(net, s, t)
    chosen = sorted(x[1] for x in source_side if isinstance(x, tuple) and x[0] == "v")
    # recompute exactly from the chosen set
    cs = set(chosen)
    e_s = sum(1 for u, v in g.edges if u in cs and v in cs)
    return Fraction(e_s) - k * len(chosen), chosen


def max_excess_flow(g: Graph, k) -> Fraction | None:
    """Same quantity as :func:`max_excess_enumerate`, via minimum cuts.

    A violating set must contain an edge, so it suffices to force every edge's
    endpoints into S; when the best such set has only two vertices a third
    vertex is forced as well.
    """
    if g.n < 3:
        return None
    k = Fraction(k)
    best: Fraction | None = None
    for u, v in g.edges:
        val, chosen = _max_closure_value(g, k, (u, v))
        if len(chosen) >= 3:
            cand = val + 2 * k
            best = cand if best is None else max(best, cand)
            continue
        for w in range(g.n):
            if w in (u, v):
                continue
            val, chosen = _max_closure_value(g, k, (u, v, w))
            cand = val + 2 * k
            best = cand if best is None else max(best, cand)
    if best is None:
        # no edges: every set has excess -k(|S|-2), maximised at |S| = 3
        best = -k
    return best


def _violated_flow(g: Graph, k: Fraction) -> bool:
    """Decision form of :func:`max_excess_flow` for k >= 1.

    Splitting a violating set into two parts with no edges between them
    loses 2k of excess, while a part on at most two vertices carries at most
    max(k, 1) = k; so some connected part on >= 3 vertices also violates, and
    the third forced vertex can be taken next to the forced edge.
    """
    for u, v in g.edges:
        val, chosen = _max_closure_value(g, k, (u, v))
        if len(chosen) >= 3:
            if val + 2 * k > 0:
                return True
            continue
        for w in sorted(set(g.neighbours(u)) | set(g.neighbours(v))):
            if w in (u, v):
                continue
            val, _ = _max_closure_value(g, k, (u, v, w))
            if val + 2 * k > 0:
                return True
    return False


def check_sparsity(g: Graph, k) -> bool:
    """True iff every subgraph H with |V(H)| >= 3 has |E(H)| <= k(|V(H)| - 2)."""
    k = Fraction(k)
    if k < 0:
        raise ValueError("k must be non-negative")
    if g.n < 3:
        return True
    if g.n <= ENUMERATION_CUTOFF:
        return max_excess_enumerate(g, k) <= 0
    if k >= 1:
        return not _violated_flow(g, k)
    return max_excess_flow(g, k) <= 0


def sparsity_bound(n: int, k) -> Fraction:
    k = Fraction(k)
    return k / 2 * n + 1 - k


@dataclass(frozen=True)
class BoundCheck:
    name: str
    bound: Fraction
    satisfied: bool
    tight: bool

    def to_dict(self) -> dict:
        b = self.bound
        return {
            "name": self.name,
            "bound": int(b) if b.denominator == 1 else str(b),
            "satisfied": self.satisfied,
            "tight": self.tight,
        }


@dataclass(frozen=True)
class BoundsReport:
    n: int
    t: int
    checks: tuple[BoundCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.satisfied for c in self.checks)

    def to_dict(self) -> dict:
        return {"n": self.n, "t": self.t, "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


def check_t_bounds(g: Graph, t: int, ks=SPARSITY_KS) -> BoundsReport:
    """Compare ``t`` against every applicable upper bound for ``g``."""
    n = g.n
    checks = []

    def add(name, bound):
        bound = Fraction(bound)
        checks.append(BoundCheck(name, bound, t <= bound, t == bound))

    if n >= 3:
        add("general 2n-4", 2 * n - 4)
    if n >= 1 and g.is_triangle_free():
        add("triangle-free n-1", n - 1)
    if n >= 2:
        for k in ks:
            if check_sparsity(g, k):
                add(f"sparsity k={k}", sparsity_bound(n, k))
    return BoundsReport(n, t, tuple(checks))


def least_sparsity_k(g: Graph, ks=SPARSITY_KS) -> Fraction | None:
    for k in sorted(ks):
        if check_sparsity(g, k):
            return k
    return None


def arboricity_formula(g: Graph) -> int:
    """max over vertex subsets of ceil(e(S) / (|S| - 1)), by enumeration."""
    if g.m == 0:
        return 0
    if g.n <= ENUMERATION_CUTOFF:
        counts = _subset_edge_counts(g).astype(np.int64)
        sizes = _popcounts(g.n).astype(np.int64)
        ok = sizes >= 2
        return int((-(-counts[ok] // (sizes[ok] - 1))).max())
    raise ValueError(f"enumeration limited to {ENUMERATION_CUTOFF} vertices")
