"""Simple undirected graphs with stable edge indices.

Vertices are the integers ``0..n-1``.  Edges keep the order in which they were
given, so colourings and decompositions refer to edges by position.
"""
from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence


class GraphError(ValueError):
    """Base class for malformed graph input."""


class GraphFormatError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateEdgeError(GraphFormatError):
    pass


class VertexRangeError(GraphFormatError):
    pass


class LoopError(GraphFormatError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative vertex count")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        seen = set()
        for i, (u, v) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexRangeError(f"edge {i} ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise LoopError(f"edge {i} is a loop at {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdgeError(f"edge {i} ({u}, {v}) is a duplicate")
            seen.add(key)
            adj[u].append((v, i))
            adj[v].append((u, i))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "adjacency", tuple(tuple(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, tuple((u, v) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def neighbours(self, v: int) -> list[int]:
        return [w for w, _ in self.adjacency[v]]

    def incident(self, v: int) -> list[int]:
        return [e for _, e in self.adjacency[v]]

    def has_edge(self, u: int, v: int) -> bool:
        return any(w == v for w, _ in self.adjacency[u])

    def edge_index(self, u: int, v: int) -> int:
        for w, e in self.adjacency[u]:
            if w == v:
                return e
        raise KeyError((u, v))

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def is_triangle_free(self) -> bool:
        nbrs = [set(self.neighbours(v)) for v in range(self.n)]
        return all(not (nbrs[u] & nbrs[v]) for u, v in self.edges)

    def is_acyclic(self) -> bool:
        return self.m == self.n - len(components(self))

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        for i, (u, v) in enumerate(self.edges):
            g.add_edge(u, v, index=i)
        return g

    # serialisation

    def to_edgelist(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [[u, v] for u, v in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        try:
            return cls.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphFormatError(f"bad graph JSON: {exc}") from exc


class EdgeSubset:
    """Set of edge indices of a graph with ``m`` edges, stored as a bitmask."""

    __slots__ = ("m", "mask")

    def __init__(self, m: int, mask: int = 0):
        if mask < 0 or mask >> m:
            raise ValueError("mask has bits outside 0..m-1")
        self.m = m
        self.mask = mask

    @classmethod
    def from_indices(cls, m: int, indices: Iterable[int]) -> "EdgeSubset":
        mask = 0
        for i in indices:
            if not 0 <= i < m:
                raise IndexError(f"edge index {i} out of range 0..{m - 1}")
            mask |= 1 << i
        return cls(m, mask)

    @classmethod
    def full(cls, m: int) -> "EdgeSubset":
        return cls(m, (1 << m) - 1)

    def indices(self) -> list[int]:
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.m and bool(self.mask >> i & 1)

    def __or__(self, other: "EdgeSubset") -> "EdgeSubset":
        return EdgeSubset(self.m, self.mask | other.mask)

    def __and__(self, other: "EdgeSubset") -> "EdgeSubset":
        return EdgeSubset(self.m, self.mask & other.mask)

    def __sub__(self, other: "EdgeSubset") -> "EdgeSubset":
        return EdgeSubset(self.m, self.mask & ~other.mask)

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgeSubset) and (self.m, self.mask) == (other.m, other.mask)

    def __hash__(self) -> int:
        return hash((self.m, self.mask))

    def __repr__(self) -> str:
        return f"EdgeSubset(m={self.m}, {self.indices()})"


@dataclass(frozen=True)
class Bipartition:
    side: tuple[int, ...]  # 0 for A, 1 for B
    valid: bool

    def part(self, label: int) -> list[int]:
        return [v for v, s in enumerate(self.side) if s == label]

    def crossing(self, g: Graph) -> EdgeSubset:
        return EdgeSubset.from_indices(
            g.m, (i for i, (u, v) in enumerate(g.edges) if self.side[u] != self.side[v])
        )


class Subgraph(NamedTuple):
    graph: Graph
    edge_map: tuple[int, ...]  # new edge index -> index in the parent graph


def load_graph(text: str) -> Graph:
    """Parse the edge-list format: header ``n m`` then ``m`` lines ``u v``.

    Blank lines and ``#`` comments are ignored.
    """
    header = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("negative header value", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise VertexRangeError(f"vertex out of range 0..{n - 1}", lineno)
        if a == b:
            raise LoopError(f"loop at vertex {a}", lineno)
        key = (a, b) if a < b else (b, a)
        if key in seen:
            raise DuplicateEdgeError(f"duplicate of edge on line {seen[key]}", lineno)
        seen[key] = lineno
        edges.append((a, b))
    if header is None:
        raise GraphFormatError("missing header line 'n m'")
    if len(edges) != header[1]:
        raise GraphFormatError(f"header declares {header[1]} edges, found {len(edges)}")
    return Graph(header[0], tuple(edges))


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            return Graph.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"bad JSON: {exc.msg}", exc.lineno) from None
    return load_graph(text)


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w, _ in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def bipartition(g: Graph) -> Bipartition | None:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w, _ in g.adjacency[v]:
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    return Bipartition(tuple(side), True)


def _cut_size(g: Graph, side: list[int]) -> int:
    return sum(1 for u, v in g.edges if side[u] != side[v])


def max_cut_bipartite_subgraph(
    g: Graph, seed: int = 0, restarts: int = 8
) -> tuple[Bipartition, EdgeSubset]:
    """Local-search max cut: flip single vertices while the cut grows.

    A local optimum has at least half of every vertex's edges crossing, so the
    returned cut always has at least ``ceil(m/2)`` edges.
    """
    rng = random.Random(seed)
    best_side: list[int] | None = None
    best = -1
    for _ in range(max(1, restarts)):
        side = [rng.randrange(2) for _ in range(g.n)]
        improved = True
        while improved:
            improved = False
            for v in range(g.n):
                same = sum(1 for w, _ in g.adjacency[v] if side[w] == side[v])
                if 2 * same > len(g.adjacency[v]):
                    side[v] ^= 1
                    improved = True
        size = _cut_size(g, side)
        if size > best:
            best, best_side = size, side
    assert best_side is not None or g.n == 0
    side_t = tuple(best_side or ())
    bip = Bipartition(side_t, all(side_t[u] != side_t[v] for u, v in g.edges))
    return bip, bip.crossing(g)


def subgraph(g: Graph, edges: EdgeSubset | Iterable[int]) -> Subgraph:
    idx = edges.indices() if isinstance(edges, EdgeSubset) else sorted(set(edges))
    for i in idx:
        if not 0 <= i < g.m:
            raise IndexError(f"edge index {i} out of range")
    return Subgraph(Graph(g.n, tuple(g.edges[i] for i in idx)), tuple(idx))


def induced_edges(g: Graph, vertices: Iterable[int]) -> EdgeSubset:
    vs = set(vertices)
    return EdgeSubset.from_indices(
        g.m, (i for i, (u, v) in enumerate(g.edges) if u in vs and v in vs)
    )


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph(offset, tuple(edges))


def relabel_compact(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``vertices`` relabelled to ``0..k-1``.

    Returns the graph and, for each of its edges, the parent edge index.
    """
    pos = {v: i for i, v in enumerate(vertices)}
    edges = []
    emap = []
    for i, (u, v) in enumerate(g.edges):
        if u in pos and v in pos:
            edges.append((pos[u], pos[v]))
            emap.append(i)
    return Graph(len(vertices), tuple(edges)), emap
