"""Interval and alpha-interval edge colourings: verification and exact search.

The search works one connected component at a time.  Two edges sharing a
vertex ``x`` have colours at most ``W(x) - 1`` apart, where ``W(x)`` is the
window size at ``x`` (``d(x)`` for interval colourings, ``floor(alpha d(x))``
in general).  Chaining this along walks gives a distance ``D(e, f)`` between
edges bounding ``|c(e) - c(f)|``.  The solver propagates these distances from
every coloured edge, which subsumes the per-vertex window constraint, and
keeps a per-vertex bitmask of used colours for properness.

Colourings are shift invariant, so each component's search is anchored: some
edge gets colour 1.  Anchors are tried in turn, and an edge already tried as
the anchor is barred from colour 1 afterwards.
"""
from __future__ import annotations

import heapq
import math
import random
import time
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Sequence

from .graph import EdgeSubset, Graph, components, induced_edges, relabel_compact


class MissingColourError(ValueError):
    pass


class SolverTimeout(RuntimeError):
    def __init__(self, nodes: int = 0):
        super().__init__(f"time limit exceeded after {nodes} nodes")
        self.nodes = nodes


class InvalidColouringError(ValueError):
    pass


class Status(str, Enum):
    COLOURABLE = "colourable"
    NOT_COLOURABLE = "not-colourable"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class SolveOptions:
    palette_max: int | None = None
    alpha: Fraction = Fraction(1)
    time_limit: float | None = None  # seconds
    seed: int = 0

    def __post_init__(self):
        alpha = Fraction(self.alpha)
        if alpha < 1:
            raise ValueError("alpha must be >= 1")
        object.__setattr__(self, "alpha", alpha)
        if self.palette_max is not None and self.palette_max < 1:
            raise ValueError("palette_max must be >= 1")


@dataclass
class SolveResult:
    status: Status
    witness: tuple[int, ...] | None = None
    nodes: int = 0

    @property
    def colourable(self) -> bool:
        return self.status is Status.COLOURABLE

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "witness": colouring_to_dict(self.witness) if self.witness is not None else None,
            "nodes": self.nodes,
        }


def colouring_to_dict(colours: Sequence[int]) -> dict:
    return {"colours": [int(c) for c in colours]}


def colouring_from_dict(data: dict) -> tuple[int, ...]:
    return tuple(int(c) for c in data["colours"])


def _check_total(g: Graph, c: Sequence[int | None]) -> None:
    if len(c) != g.m:
        raise MissingColourError(f"colouring has {len(c)} entries for {g.m} edges")
    for i, x in enumerate(c):
        if x is None:
            raise MissingColourError(f"edge {i} has no colour")


def window(alpha: Fraction, d: int) -> int:
    return math.floor(Fraction(alpha) * d)


def verify_alpha_interval(g: Graph, c: Sequence[int], alpha=1) -> bool:
    """Proper, and at every vertex x the colours fit in floor(alpha d(x)) consecutive integers."""
    _check_total(g, c)
    alpha = Fraction(alpha)
    for v in range(g.n):
        cols = [c[e] for _, e in g.adjacency[v]]
        if not cols:
            continue
        if len(set(cols)) != len(cols):
            return False
        if max(cols) - min(cols) + 1 > window(alpha, len(cols)):
            return False
    return True


def verify_interval(g: Graph, c: Sequence[int]) -> bool:
    _check_total(g, c)
    for v in range(g.n):
        cols = {c[e] for _, e in g.adjacency[v]}
        d = len(g.adjacency[v])
        if d and (len(cols) != d or max(cols) - min(cols) != d - 1):
            return False
    return True


def edge_distances(g: Graph, windows: Sequence[int]) -> list[list[int]]:
    """Shortest paths in the line graph where passing through x costs W(x) - 1.

    Unreachable pairs (different components) get ``-1``.
    """
    m = g.m
    out = []
    for src in range(m):
        dist = [-1] * m
        dist[src] = 0
        heap = [(0, src)]
        done = [False] * m
        while heap:
            d, e = heapq.heappop(heap)
            if done[e]:
                continue
            done[e] = True
            for x in g.edges[e]:
                step = d + windows[x] - 1
                for _, f in g.adjacency[x]:
                    if not done[f] and (dist[f] < 0 or step < dist[f]):
                        dist[f] = step
                        heapq.heappush(heap, (step, f))
        out.append(dist)
    return out


def _bfs_edge_order(g: Graph) -> list[int]:
    """Edges in BFS order from a maximum-degree vertex (per component)."""
    order = []
    seen_e = [False] * g.m
    seen_v = [False] * g.n
    roots = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for r in roots:
        if seen_v[r]:
            continue
        seen_v[r] = True
        queue = deque([r])
        while queue:
            v = queue.popleft()
            for w, e in g.adjacency[v]:
                if not seen_e[e]:
                    seen_e[e] = True
                    order.append(e)
                if not seen_v[w]:
                    seen_v[w] = True
                    queue.append(w)
    return order


def edge_orbit_representatives(g: Graph, max_automorphisms: int = 5000) -> list[int]:
    """Smallest edge index in each edge's orbit under (some) automorphisms."""
    from networkx.algorithms.isomorphism import GraphMatcher

    parent = list(range(g.m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    nxg = g.to_networkx()
    for count, auto in enumerate(GraphMatcher(nxg, nxg).isomorphisms_iter()):
        if count >= max_automorphisms:
            break
        for i, (u, v) in enumerate(g.edges):
            j = g.edge_index(auto[u], auto[v])
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(i) for i in range(g.m)]


class _Stop(Exception):
    pass


class _ComponentSearch:
    """Backtracking search on one connected graph."""

    def __init__(self, g: Graph, alpha: Fraction, deadline: float | None, nodes: int = 0,
                 seed: int = 0):
        self.g = g
        self.m = g.m
        self.ends = g.edges
        self.windows = [window(alpha, g.degree(v)) for v in range(g.n)]
        self.dist = edge_distances(g, self.windows)
        self.diameter = max((max(row) for row in self.dist), default=0)
        order = _bfs_edge_order(g)
        if seed:
            # any order is sound; a seed only changes which witness turns up first
            random.Random(seed).shuffle(order)
        self.rank = [0] * self.m
        for i, e in enumerate(order):
            self.rank[e] = i
        self.deadline = deadline
        self.nodes = nodes
        self.prefer_high = False
        self.orbit_rep: list[int] | None = None

    # static refutation: the d(v) distinct colours at v span at least d(v) - 1,
    # so some pair of edges at v must be allowed to differ by that much
    def obviously_infeasible(self) -> bool:
        g = self.g
        for v in range(g.n):
            inc = [e for _, e in g.adjacency[v]]
            d = len(inc)
            if d < 2:
                continue
            if self.windows[v] < d:
                return True
            need = d - 1
            if not any(self.dist[e][f] >= need for i, e in enumerate(inc) for f in inc[i + 1 :]):
                return True
        return False

    def anchors(self) -> list[int]:
        # edges far from everything are the likeliest extremes
        return sorted(range(self.m), key=lambda e: (-max(self.dist[e]), self.rank[e]))

    def edge_orbits(self) -> list[int]:
        """Representative of each edge under the automorphisms found.

        Enumeration is capped, so orbits may be split but never wrongly merged.
        """
        if self.orbit_rep is None:
            self.orbit_rep = edge_orbit_representatives(self.g)
        return self.orbit_rep

    def _tick(self):
        self.nodes += 1
        if self.deadline is not None and not self.nodes & 0x3FFF:
            if time.monotonic() > self.deadline:
                raise SolverTimeout(self.nodes)

    def run(self, palette: int, mode: str = "decide", best: int = 0, upper: int | None = None):
        """Search anchored colourings within ``1..palette``.

        ``mode='decide'`` returns the first colouring found (or None).
        ``mode='max'`` returns the colouring with the largest maximum colour
        exceeding ``best`` (or None), stopping early on reaching ``upper``.
        """
        m = self.m
        if m == 0:
            return ()
        self.mode = mode
        self.best = best
        self.upper = upper if upper is not None else palette
        self.found = None
        self.col = [0] * m
        self.used = [0] * self.g.n
        self.prefer_high = mode == "max"
        barred = []
        rep = self.edge_orbits()
        failed_orbits = set()
        try:
            for a in self.anchors():
                # an edge equivalent to a tried anchor cannot do better as colour 1
                if rep[a] in failed_orbits or (mode == "max" and 1 + max(self.dist[a]) <= self.best):
                    barred.append(a)
                    continue
                lo = [1] * m
                hi = [palette] * m
                for b in barred:
                    lo[b] = 2
                if self._assign(a, 1, lo, hi):
                    self._dfs(lo, hi, 1)
                self._unassign(a, 1)
                if mode == "decide" and self.found is not None:
                    break
                barred.append(a)
                failed_orbits.add(rep[a])
        except _Stop:
            pass
        return self.found

    def _assign(self, e, c, lo, hi) -> bool:
        """Colour e with c and tighten lo/hi in place; False on a wipe-out."""
        a, b = self.ends[e]
        self.col[e] = c
        bit = 1 << c
        self.used[a] |= bit
        self.used[b] |= bit
        de = self.dist[e]
        col = self.col
        for f in range(self.m):
            if col[f]:
                continue
            d = de[f]
            if c - d > lo[f]:
                lo[f] = c - d
            if c + d < hi[f]:
                hi[f] = c + d
            if lo[f] > hi[f]:
                return False
        return True

    def _unassign(self, e, c):
        a, b = self.ends[e]
        self.col[e] = 0
        mask = ~(1 << c)
        self.used[a] &= mask
        self.used[b] &= mask

    def _dfs(self, lo, hi, cur_max):
        self._tick()
        col, used, ends = self.col, self.used, self.ends
        best_e = -1
        best_mask = 0
        best_cnt = 1 << 30
        top = cur_max
        for f in range(self.m):
            if col[f]:
                continue
            a, b = ends[f]
            mask = ((2 << hi[f]) - (1 << lo[f])) & ~(used[a] | used[b])
            if not mask:
                return
            cnt = mask.bit_count()
            if cnt < best_cnt or (cnt == best_cnt and self.rank[f] < self.rank[best_e]):
                best_e, best_mask, best_cnt = f, mask, cnt
            hf = mask.bit_length() - 1
            if hf > top:
                top = hf
        if self.mode == "max" and top <= self.best:
            return
        if best_e < 0:
            self._leaf(cur_max)
            return
        for c in self._values(best_e, best_mask):
            nlo = lo[:]
            nhi = hi[:]
            if self._assign(best_e, c, nlo, nhi):
                self._dfs(nlo, nhi, c if c > cur_max else cur_max)
            self._unassign(best_e, c)
            if self.mode == "max" and self.best >= self.upper:
                raise _Stop

    def _values(self, e, mask):
        a, b = self.ends[e]
        ua, ub = self.used[a], self.used[b]
        cols = []
        while mask:
            low = mask & -mask
            cols.append(low.bit_length() - 1)
            mask ^= low

        def gap(c, u):
            if not u:
                return 0
            mn = (u & -u).bit_length() - 1
            mx = u.bit_length() - 1
            return mn - c if c < mn else (c - mx if c > mx else 0)

        sign = -1 if self.prefer_high else 1
        cols.sort(key=lambda c: (gap(c, ua) + gap(c, ub), sign * c))
        return cols

    def _leaf(self, cur_max):
        if self.mode == "decide":
            self.found = tuple(self.col)
            raise _Stop
        if cur_max > self.best:
            self.best = cur_max
            self.found = tuple(self.col)
            if self.best >= self.upper:
                raise _Stop


def _component_graphs(g: Graph):
    for comp in components(g):
        h, emap = relabel_compact(g, comp)
        if h.m:
            yield h, emap


def _complete_palette(search: _ComponentSearch, alpha: Fraction) -> int:
    bound = search.diameter + 1
    n = search.g.n
    if alpha == 1 and n >= 3:
        bound = min(bound, 2 * n - 4)
    return max(bound, 1)


def decide_interval_colourable(g: Graph, opts: SolveOptions | None = None) -> SolveResult:
    """Decide (alpha-)interval colourability, one component at a time.

    With the default palette the answer is exact: any colouring of a
    connected graph shifts into ``1..D+1`` where ``D`` is the largest edge
    distance, and for interval colourings also into ``1..2n-4``.  A smaller
    user palette that rules everything out yields TIMEOUT rather than a claim
    of non-colourability.
    """
    opts = opts or SolveOptions()
    deadline = None if opts.time_limit is None else time.monotonic() + opts.time_limit
    colours = [0] * g.m
    nodes = 0
    undecided = False
    for h, emap in _component_graphs(g):
        search = _ComponentSearch(h, opts.alpha, deadline, nodes, opts.seed)
        complete = _complete_palette(search, opts.alpha)
        palette = complete if opts.palette_max is None else opts.palette_max
        if search.obviously_infeasible():
            return SolveResult(Status.NOT_COLOURABLE, None, nodes)
        try:
            found = search.run(palette, "decide")
        except SolverTimeout:
            return SolveResult(Status.TIMEOUT, None, search.nodes)
        nodes = search.nodes
        if found is None:
            if palette >= complete:
                return SolveResult(Status.NOT_COLOURABLE, None, nodes)
            undecided = True
            continue
        for i, c in enumerate(found):
            colours[emap[i]] = c
    if undecided:
        return SolveResult(Status.TIMEOUT, None, nodes)
    witness = tuple(colours)
    assert verify_alpha_interval(g, witness, opts.alpha)
    return SolveResult(Status.COLOURABLE, witness, nodes)


class TmaxResult(NamedTuple):
    t: int | None
    witness: tuple[int, ...] | None
    nodes: int


def component_t_upper(h: Graph, use_bounds: bool = True) -> int:
    """Upper bound on t for a connected graph, used to cut the search short."""
    from .bounds import check_sparsity

    search = _ComponentSearch(h, Fraction(1), None)
    ub = search.diameter + 1
    n = h.n
    if use_bounds:
        if n >= 3:
            ub = min(ub, 2 * n - 4)
        if h.is_triangle_free():
            ub = min(ub, n - 1)
        if n >= 3 and check_sparsity(h, 3):
            ub = min(ub, (3 * n) // 2 - 2)
    return ub


def max_palette(g: Graph, opts: SolveOptions | None = None, use_bounds: bool = True) -> TmaxResult:
    """t(G) with a witness: the most colours an interval colouring can use.

    Components contribute independently, so t is summed over components and
    each component's witness is shifted to start at 1.  ``use_bounds`` lets
    the search stop once a colouring meets a known upper bound (general
    ``2n-4``, triangle-free ``n-1``, planar-type ``3n/2-2``); without it only
    the edge-distance bound is used and optimality is proved by exhaustion.
    """
    opts = opts or SolveOptions()
    if opts.alpha != 1:
        raise ValueError("t is defined for interval colourings (alpha = 1)")
    deadline = None if opts.time_limit is None else time.monotonic() + opts.time_limit
    colours = [0] * g.m
    total = 0
    nodes = 0
    for h, emap in _component_graphs(g):
        search = _ComponentSearch(h, Fraction(1), deadline, nodes, opts.seed)
        if search.obviously_infeasible():
            return TmaxResult(None, None, nodes)
        palette = _complete_palette(search, Fraction(1))
        try:
            first = search.run(palette, "decide")
            if first is None:
                return TmaxResult(None, None, search.nodes)
            ub = min(palette, component_t_upper(h, use_bounds))
            best, witness = max(first), first
            if best < ub:
                found = search.run(ub, "max", best=best, upper=ub)
                if found is not None:
                    best, witness = max(found), found
        except SolverTimeout as exc:
            raise SolverTimeout(exc.nodes) from None
        nodes = search.nodes
        total += best
        for i, c in enumerate(witness):
            colours[emap[i]] = c
    witness = tuple(colours)
    assert verify_interval(g, witness)
    return TmaxResult(total, witness, nodes)


def t_max(g: Graph, opts: SolveOptions | None = None, use_bounds: bool = True) -> int | None:
    return max_palette(g, opts, use_bounds).t


class Split(NamedTuple):
    low: EdgeSubset
    high: EdgeSubset
    colour: int
    edge: int


def split_at_unique_colour(g: Graph, c: Sequence[int]) -> Split | None:
    """Split at an interior colour used by a single edge vw.

    ``low`` is the edge set of G[V1 + {v, w}] and ``high`` that of
    G[V2 + {v, w}], where V1 (V2) holds the other vertices seeing only
    smaller (larger) colours.  Both contain vw itself, so together they
    cover E(G) and share exactly that edge.
    """
    if not verify_interval(g, c):
        raise InvalidColouringError("not an interval colouring")
    if g.m == 0:
        return None
    t = max(c)
    lo_c = min(c)
    counts: dict[int, int] = {}
    for x in c:
        counts[x] = counts.get(x, 0) + 1
    for gamma in range(lo_c + 1, t):
        if counts.get(gamma) != 1:
            continue
        e = c.index(gamma)
        v, w = g.edges[e]
        v1, v2 = {v, w}, {v, w}
        for x in range(g.n):
            if x in (v, w) or not g.adjacency[x]:
                continue
            cols = [c[f] for _, f in g.adjacency[x]]
            if max(cols) < gamma:
                v1.add(x)
            elif min(cols) > gamma:
                v2.add(x)
            else:
                raise InvalidColouringError(f"vertex {x} straddles colour {gamma}")
        return Split(induced_edges(g, v1), induced_edges(g, v2), gamma, e)
    return None

