"""Checkable proofs that a graph has no interval colouring.

In an interval colouring, colours at a vertex x differ by at most d(x) - 1,
so edges at the two ends of a path P differ by less than the degree sum of P.
If every pair of a vertex set U is joined by a path of degree sum at most d,
then no vertex can have more than d neighbours in U.  A certificate records U,
d, a vertex u with more than d neighbours in U, and the paths.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import NamedTuple, Sequence

from .graph import Graph

STORE_ALL_PAIRS_LIMIT = 64


class Effort(str, Enum):
    NEIGHBOURHOODS = "neighbourhoods"
    BALLS = "balls"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class NonColourabilityCertificate:
    U: tuple[int, ...]
    d: int
    u: int
    paths: tuple[tuple[int, ...], ...] = ()

    def to_dict(self) -> dict:
        return {"U": list(self.U), "d": self.d, "u": self.u, "paths": [list(p) for p in self.paths]}

    @classmethod
    def from_dict(cls, data: dict) -> "NonColourabilityCertificate":
        return cls(
            tuple(int(x) for x in data["U"]),
            int(data["d"]),
            int(data["u"]),
            tuple(tuple(int(x) for x in p) for p in data.get("paths", [])),
        )


class CertificateCheck(NamedTuple):
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def _dijkstra(g: Graph, source: int) -> tuple[list[float], list[int]]:
    """Least degree sum (endpoints included) from source to every vertex."""
    deg = g.degrees()
    dist: list[float] = [math.inf] * g.n
    pred = [-1] * g.n
    dist[source] = deg[source]
    heap = [(deg[source], source)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for w, _ in g.adjacency[v]:
            nd = d + deg[w]
            if nd < dist[w]:
                dist[w] = nd
                pred[w] = v
                heapq.heappush(heap, (nd, w))
    return dist, pred


def degree_sum_distance(g: Graph, v: int, w: int) -> float:
    """Minimum over v-w paths of the sum of the degrees of all path vertices."""
    if v == w:
        raise ValueError("endpoints must differ")
    return _dijkstra(g, v)[0][w]


def degree_sum_path(g: Graph, v: int, w: int) -> list[int] | None:
    dist, pred = _dijkstra(g, v)
    if dist[w] == math.inf:
        return None
    out = [w]
    while out[-1] != v:
        out.append(pred[out[-1]])
    return out[::-1]


def degree_sum_matrix(g: Graph) -> list[list[float]]:
    return [_dijkstra(g, v)[0] for v in range(g.n)]


def _path_ok(g: Graph, p: Sequence[int], a: int, b: int, d: int) -> bool:
    if len(p) < 2 or {p[0], p[-1]} != {a, b} or len(set(p)) != len(p):
        return False
    if any(not 0 <= x < g.n for x in p):
        return False
    if any(not g.has_edge(x, y) for x, y in zip(p, p[1:])):
        return False
    return sum(g.degree(x) for x in p) <= d


def check_certificate(g: Graph, cert: NonColourabilityCertificate) -> CertificateCheck:
    """Validate every claim of ``cert`` against ``g``.

    A passing certificate proves that ``g`` is not interval colourable.
    """
    U = cert.U
    if len(set(U)) != len(U) or any(not 0 <= x < g.n for x in U):
        return CertificateCheck(False, "bad vertex set")
    if not 0 <= cert.u < g.n:
        return CertificateCheck(False, "bad witness vertex")
    if cert.d < 1:
        return CertificateCheck(False, "bad bound")
    nbrs = set(g.neighbours(cert.u))
    if sum(1 for x in U if x in nbrs) <= cert.d:
        return CertificateCheck(False, "no violation")
    pairs = list(combinations(U, 2))
    if len(U) <= STORE_ALL_PAIRS_LIMIT:
        by_pair = {}
        for p in cert.paths:
            if len(p) >= 2:
                by_pair[frozenset((p[0], p[-1]))] = p
        for a, b in pairs:
            p = by_pair.get(frozenset((a, b)))
            if p is None:
                return CertificateCheck(False, "missing path")
            if not _path_ok(g, p, a, b, cert.d):
                return CertificateCheck(False, "bad path")
    else:
        for a in U:
            dist = _dijkstra(g, a)[0]
            if any(dist[b] > cert.d for b in U if b != a):
                return CertificateCheck(False, "bad path")
    return CertificateCheck(True, "ok")


def _make_certificate(g: Graph, U: Sequence[int], d: int, u: int) -> NonColourabilityCertificate:
    U = tuple(sorted(U))
    paths = ()
    if len(U) <= STORE_ALL_PAIRS_LIMIT:
        paths = tuple(tuple(degree_sum_path(g, a, b)) for a, b in combinations(U, 2))
    return NonColourabilityCertificate(U, int(d), u, paths)


def _spread(dm, U) -> float:
    return max((dm[a][b] for a, b in combinations(U, 2)), default=0)


def _try_candidate(g: Graph, dm, U: Sequence[int]):
    """Scan all u against U; greedily shrink U & N(u) while it helps."""
    U = list(U)
    if len(U) < 2:
        return None
    for u in range(g.n):
        nbrs = set(g.neighbours(u))
        core = [x for x in U if x in nbrs]
        while len(core) >= 2:
            d = _spread(dm, core)
            if d == math.inf:
                # drop the vertex unreachable from most others
                worst = max(core, key=lambda x: sum(dm[x][y] == math.inf for y in core))
                core.remove(worst)
                continue
            if len(core) > d:
                return _make_certificate(g, core, d, u)
            worst = max(core, key=lambda x: (max(dm[x][y] for y in core if y != x), x))
            core.remove(worst)
    return None


def _ball(g: Graph, v: int, radius: int) -> list[int]:
    seen = {v}
    frontier = [v]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for w, _ in g.adjacency[x]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen)


def _exhaustive(g: Graph, dm):
    """Complete search: for each u and each bound d, a largest set of
    neighbours of u that are pairwise within d is a maximum clique."""
    import networkx as nx

    for u in range(g.n):
        nb = g.neighbours(u)
        if len(nb) < 2:
            continue
        levels = sorted({dm[a][b] for a, b in combinations(nb, 2) if dm[a][b] < len(nb)})
        for d in levels:
            close = nx.Graph()
            close.add_nodes_from(nb)
            close.add_edges_from((a, b) for a, b in combinations(nb, 2) if dm[a][b] <= d)
            clique, size = nx.max_weight_clique(close, weight=None)
            if size > d:
                return _make_certificate(g, clique, d, u)
    return None


def search_certificate(g: Graph, effort: Effort | str = Effort.BALLS) -> NonColourabilityCertificate | None:
    """Look for a certificate of non-colourability; None if none is found.

    ``neighbourhoods`` tries U = N(x) for every x, ``balls`` also closed balls
    of radius up to 3, and ``exhaustive`` is complete for this kind of
    certificate.  A returned certificate always passes check_certificate.
    """
    effort = Effort(effort)
    if g.n < 3:
        return None
    dm = degree_sum_matrix(g)
    if effort is Effort.EXHAUSTIVE:
        cert = _exhaustive(g, dm)
    else:
        cert = None
        candidates = [g.neighbours(x) for x in range(g.n)]
        if effort is Effort.BALLS:
            candidates += [_ball(g, x, r) for r in (1, 2, 3) for x in range(g.n)]
        seen = set()
        for U in candidates:
            key = tuple(sorted(U))
            if key in seen:
                continue
            seen.add(key)
            cert = _try_candidate(g, dm, U)
            if cert is not None:
                break
    if cert is not None:
        assert check_certificate(g, cert).ok
    return cert
