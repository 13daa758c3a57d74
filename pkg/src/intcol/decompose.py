"""Edge decompositions into interval colourable parts.

``theta_exact`` finds the interval colouring thickness of small graphs by
exhaustive search over edge partitions.  ``decompose_pipeline`` builds a
verified decomposition of any graph: it repeatedly removes a large regular
bipartite subgraph and finishes the sparse remainder with a minimum forest
partition.
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import networkx as nx

from .bounds import check_sparsity, check_t_bounds  # noqa: F401  (public API)
from .colouring import (
    SolveOptions,
    SolverTimeout,
    decide_interval_colourable,
    verify_interval,
)
from .graph import (
    Bipartition,
    EdgeSubset,
    Graph,
    bipartition,
    max_cut_bipartite_subgraph,
    subgraph,
)


class NotAForestError(ValueError):
    pass


class RegularityError(ValueError):
    pass


class PartKind(str, Enum):
    FOREST = "forest"
    REGULAR_BIPARTITE = "regular-bipartite"
    GENERIC = "generic"


@dataclass
class Part:
    edges: EdgeSubset
    kind: PartKind
    colouring: tuple[int, ...] | None = None  # aligned with edges.indices()
    r: int | None = None

    def to_dict(self) -> dict:
        return {
            "edges": self.edges.indices(),
            "kind": self.kind.value,
            "r": self.r,
            "colours": list(self.colouring) if self.colouring is not None else None,
        }


@dataclass
class Decomposition:
    parts: list[Part] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.parts)

    def to_dict(self) -> dict:
        return {"parts": [p.to_dict() for p in self.parts]}


@dataclass
class ThicknessResult:
    theta: int
    decomposition: Decomposition
    exact: bool

    def to_dict(self) -> dict:
        out = self.decomposition.to_dict()
        out.update(theta=self.theta, exact=self.exact)
        return out


@dataclass(frozen=True)
class PipelineConfig:
    """Stages of the extraction loop.

    Extraction continues while the remaining edge count exceeds the current
    threshold; thresholds default to m/2, m/4, ... down to n.
    """

    density_thresholds: tuple[int, ...] | None = None
    min_regularity: int = 2
    max_cut_seed: int = 0

    def __post_init__(self):
        if self.min_regularity < 2:
            raise ValueError("min_regularity must be at least 2")
        t = self.density_thresholds
        if t is not None and any(a <= b for a, b in zip(t, t[1:])):
            raise ValueError("thresholds must be strictly decreasing")

    def schedule(self, g: Graph) -> list[int]:
        if self.density_thresholds is not None:
            return list(self.density_thresholds)
        out = []
        t = g.m // 2
        while t > g.n:
            out.append(t)
            t //= 2
        out.append(min(g.n, max(g.m - 1, 0)))
        return sorted(set(out), reverse=True)


def validate_decomposition(g: Graph, dec: Decomposition) -> list[str]:
    """Problems with ``dec`` as a decomposition of ``g`` (empty when valid)."""
    problems = []
    seen = 0
    for i, part in enumerate(dec.parts):
        if part.edges.m != g.m:
            problems.append(f"part {i}: subset is over {part.edges.m} edges, graph has {g.m}")
            continue
        if seen & part.edges.mask:
            problems.append(f"part {i} overlaps an earlier part")
        seen |= part.edges.mask
        h = subgraph(g, part.edges).graph
        if part.colouring is not None:
            if len(part.colouring) != h.m or not verify_interval(h, part.colouring):
                problems.append(f"part {i}: colouring does not verify")
        if part.kind is PartKind.FOREST and not h.is_acyclic():
            problems.append(f"part {i}: forest part has a cycle")
        if part.kind is PartKind.REGULAR_BIPARTITE:
            degs = [d for d in h.degrees() if d]
            if bipartition(h) is None or any(d != part.r for d in degs):
                problems.append(f"part {i}: not {part.r}-regular bipartite")
    if seen != (1 << g.m) - 1:
        problems.append("parts do not cover every edge")
    return problems


# --- forests -------------------------------------------------------------------


def colour_forest(g: Graph, edges: EdgeSubset | Sequence[int] | None = None) -> tuple[int, ...]:
    """Interval colouring of a forest, aligned with the subset's edge order.

    Each tree is rooted at its smallest vertex whose edges get 1..d.  A vertex
    entered by an edge of colour c gives its other edges c+1, c+2, ...
    """
    if edges is None:
        edges = EdgeSubset.full(g.m)
    h = subgraph(g, edges).graph
    if not h.is_acyclic():
        raise NotAForestError("edge subset contains a cycle")
    colour = [0] * h.m
    seen = [False] * h.n
    for root in range(h.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque()
        for k, (w, e) in enumerate(h.adjacency[root]):
            colour[e] = k + 1
            seen[w] = True
            queue.append((w, e))
        while queue:
            v, via = queue.popleft()
            c = colour[via]
            for w, e in h.adjacency[v]:
                if e == via:
                    continue
                c += 1
                colour[e] = c
                seen[w] = True
                queue.append((w, e))
    return tuple(colour)


def _forest_path(adj: dict[int, dict[int, int]], s: int, t: int) -> list[int] | None:
    """Edge indices on the s-t path of a forest given as adjacency dicts."""
    if s == t:
        return []
    prev = {s: (None, None)}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w, e in adj.get(v, {}).items():
            if w not in prev:
                prev[w] = (v, e)
                if w == t:
                    out = []
                    x = t
                    while prev[x][0] is not None:
                        out.append(prev[x][1])
                        x = prev[x][0]
                    return out
                queue.append(w)
    return None


def forest_decomposition(g: Graph) -> list[EdgeSubset]:
    """Partition E(G) into the minimum number of forests.

    Edges are inserted one at a time.  When no forest accepts an edge
    directly, a shortest augmenting sequence of exchanges is sought (matroid
    partition); only if none exists is a new forest opened, which keeps the
    count equal to the arboricity.
    """
    forests: list[dict[int, dict[int, int]]] = []
    home = [-1] * g.m

    def link(i, e):
        u, v = g.edges[e]
        forests[i].setdefault(u, {})[v] = e
        forests[i].setdefault(v, {})[u] = e
        home[e] = i

    def cut(i, e):
        u, v = g.edges[e]
        del forests[i][u][v]
        del forests[i][v][u]
        home[e] = -1

    for e in range(g.m):
        # BFS over edges: label[x] = (edge displaced by x, forest it left)
        label = {e: None}
        queue = deque([e])
        done = False
        while queue and not done:
            x = queue.popleft()
            u, v = g.edges[x]
            for i in range(len(forests)):
                if i == home[x]:
                    continue
                p = _forest_path(forests[i], u, v)
                if p is None:
                    # x fits in forest i: unwind the exchange sequence
                    target = i
                    while x is not None:
                        prev = label[x]
                        old = home[x]
                        if old >= 0:
                            cut(old, x)
                        link(target, x)
                        if prev is None:
                            break
                        x, target = prev, old
                    done = True
                    break
                for y in p:
                    if y not in label:
                        label[y] = x
                        queue.append(y)
        if not done:
            forests.append({})
            link(len(forests) - 1, e)
    out = [[] for _ in forests]
    for e, i in enumerate(home):
        out[i].append(e)
    return [EdgeSubset.from_indices(g.m, idx) for idx in out]


# --- regular bipartite parts ----------------------------------------------------


def _exact_degree_flow(g: Graph, side, edges: list[int], alive: set[int], r: int):
    """Max flow with every alive vertex capped at r; returns (flow edges, load)."""
    net = nx.DiGraph()
    s, t = "s", "t"
    for v in alive:
        if side[v] == 0:
            net.add_edge(s, v, capacity=r)
        else:
            net.add_edge(v, t, capacity=r)
    for e in edges:
        a, b = g.edges[e]
        if a in alive and b in alive:
            if side[a] == 1:
                a, b = b, a
            net.add_edge(a, b, capacity=1, index=e)
    if s not in net or t not in net:
        return [], {v: 0 for v in alive}
    _, flow = nx.maximum_flow(net, s, t)
    chosen = []
    load = {v: 0 for v in alive}
    for a, targets in flow.items():
        if a in (s, t):
            continue
        for b, f in targets.items():
            if b != t and f > 0:
                chosen.append(net[a][b]["index"])
                load[a] += 1
                load[b] += 1
    return chosen, load


def find_regular_bipartite(g: Graph, bip: Bipartition, r: int) -> EdgeSubset | None:
    """An edge set, crossing ``bip``, in which every covered vertex has degree r.

    Vertices of degree below r are peeled; then a flow with capacity r at
    every surviving vertex is solved.  Unused vertices are dropped, or else
    the single most underloaded one, and the process repeats.  Greedy, so
    absence is not proof of absence.
    """
    if r < 1:
        raise ValueError("r must be positive")
    side = bip.side
    edges = [e for e in range(g.m) if side[g.edges[e][0]] != side[g.edges[e][1]]]
    alive = {v for e in edges for v in g.edges[e]}
    while alive:
        # peel
        changed = True
        while changed:
            deg = {v: 0 for v in alive}
            for e in edges:
                a, b = g.edges[e]
                if a in alive and b in alive:
                    deg[a] += 1
                    deg[b] += 1
            low = {v for v, d in deg.items() if d < r}
            changed = bool(low)
            alive -= low
        if not alive:
            return None
        chosen, load = _exact_degree_flow(g, side, edges, alive, r)
        short = [v for v, x in load.items() if x < r]
        if not short:
            return EdgeSubset.from_indices(g.m, chosen)
        unused = {v for v in short if load[v] == 0}
        alive -= unused or {min(short, key=lambda v: (load[v], v))}
    return None


def colour_regular_bipartite(g: Graph, edges: EdgeSubset, r: int) -> tuple[int, ...]:
    """Colours 1..r, each class a perfect matching of the covered vertices."""
    h = subgraph(g, edges).graph
    degs = h.degrees()
    if any(d not in (0, r) for d in degs):
        raise RegularityError(f"subset is not {r}-regular on its covered vertices")
    bip = bipartition(h)
    if bip is None:
        raise RegularityError("subset is not bipartite")
    colour = [0] * h.m
    remaining = set(range(h.m))
    left = [v for v in range(h.n) if degs[v] and bip.side[v] == 0]
    for c in range(1, r + 1):
        net = nx.Graph()
        net.add_nodes_from(("L", v) for v in left)
        for e in remaining:
            a, b = h.edges[e]
            if bip.side[a] == 1:
                a, b = b, a
            net.add_edge(("L", a), ("R", b), index=e)
        matching = nx.bipartite.hopcroft_karp_matching(net, top_nodes=[("L", v) for v in left])
        for v in left:
            mate = matching.get(("L", v))
            if mate is None:
                raise RegularityError("no perfect matching; subset is not regular")
            e = net[("L", v)][mate]["index"]
            colour[e] = c
            remaining.discard(e)
    return tuple(colour)


# --- pipeline ---------------------------------------------------------------------


def _largest_regular(g: Graph, remaining: EdgeSubset, cfg: PipelineConfig, seed: int):
    sub = subgraph(g, remaining)
    h = sub.graph
    bip, crossing = max_cut_bipartite_subgraph(h, seed=seed)
    cross_g = subgraph(h, crossing).graph
    top = cross_g.max_degree()
    for r in range(top, cfg.min_regularity - 1, -1):
        found = find_regular_bipartite(h, bip, r)
        if found is not None:
            return EdgeSubset.from_indices(g.m, (sub.edge_map[i] for i in found)), r
    return None, None


def decompose_pipeline(g: Graph, cfg: PipelineConfig | None = None) -> Decomposition:
    cfg = cfg or PipelineConfig()
    remaining = EdgeSubset.full(g.m)
    dec = Decomposition()
    round_ = 0
    for threshold in cfg.schedule(g):
        stop = False
        while len(remaining) > threshold:
            part, r = _largest_regular(g, remaining, cfg, cfg.max_cut_seed + round_)
            round_ += 1
            if part is None:
                stop = True
                break
            colours = colour_regular_bipartite(g, part, r)
            dec.parts.append(Part(part, PartKind.REGULAR_BIPARTITE, colours, r))
            remaining = remaining - part
        if stop:
            break
    if remaining.mask:
        rest = subgraph(g, remaining)
        for forest in forest_decomposition(rest.graph):
            idx = [rest.edge_map[i] for i in forest.indices()]
            sub_edges = EdgeSubset.from_indices(g.m, idx)
            dec.parts.append(Part(sub_edges, PartKind.FOREST, colour_forest(g, sub_edges)))
    problems = validate_decomposition(g, dec)
    if problems:
        raise AssertionError("; ".join(problems))
    return dec


def theta_upper(g: Graph, cfg: PipelineConfig | None = None) -> ThicknessResult:
    dec = decompose_pipeline(g, cfg)
    return ThicknessResult(len(dec), dec, exact=False)


# --- exact thickness ---------------------------------------------------------------


def theta_exact(g: Graph, k_max: int, opts: SolveOptions | None = None) -> ThicknessResult | None:
    """Least k <= k_max with an edge partition into k interval colourable parts.

    Partitions are enumerated with parts unlabelled (edge i may only open the
    next new part).  Colourability is not monotone under adding edges, so
    parts are only tested once complete; results are memoised per edge set.
    """
    opts = opts or SolveOptions()
    deadline = None if opts.time_limit is None else time.monotonic() + opts.time_limit
    memo: dict[int, tuple[int, ...] | None] = {}

    def colouring_of(mask: int):
        if mask not in memo:
            idx = [i for i in range(g.m) if mask >> i & 1]
            h = subgraph(g, idx).graph
            if h.is_acyclic():
                memo[mask] = colour_forest(h)
            else:
                remaining = None if deadline is None else max(deadline - time.monotonic(), 0.0)
                res = decide_interval_colourable(h, SolveOptions(time_limit=remaining))
                if res.status.value == "timeout":
                    raise SolverTimeout(res.nodes)
                memo[mask] = res.witness
        return memo[mask]

    def make(masks, kind_of):
        parts = []
        for mk in masks:
            c = colouring_of(mk)
            parts.append(Part(EdgeSubset(g.m, mk), kind_of(mk), c))
        return Decomposition(parts)

    def kind_of(mk):
        idx = [i for i in range(g.m) if mk >> i & 1]
        return PartKind.FOREST if subgraph(g, idx).graph.is_acyclic() else PartKind.GENERIC

    if g.m == 0:
        return ThicknessResult(0, Decomposition(), exact=True)
    counter = [0]
    for k in range(1, k_max + 1):
        masks = [0] * k

        def rec(i, opened):
            counter[0] += 1
            if deadline is not None and not counter[0] & 0x3FF and time.monotonic() > deadline:
                raise SolverTimeout(counter[0])
            if g.m - i < k - opened:
                return False
            if i == g.m:
                return all(colouring_of(mk) is not None for mk in masks)
            for p in range(min(opened + 1, k)):
                masks[p] |= 1 << i
                if rec(i + 1, max(opened, p + 1)):
                    return True
                masks[p] &= ~(1 << i)
            return False

        if rec(0, 0):
            dec = make(masks, kind_of)
            problems = validate_decomposition(g, dec)
            if problems:
                raise AssertionError("; ".join(problems))
            return ThicknessResult(k, dec, exact=True)
    return None
