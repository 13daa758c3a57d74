"""Graph families: extremal planar graphs, random bipartite layers, standard families."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .graph import Bipartition, Graph


class InfeasibleParameters(ValueError):
    pass


class ResamplingBudgetExceeded(RuntimeError):
    pass


# --- extremal family ---------------------------------------------------------


@dataclass(frozen=True)
class ExtremalSpec:
    s: int
    blue: frozenset[int] = frozenset()
    odd_extension: bool = False

    def __post_init__(self):
        if self.s < 2:
            raise InfeasibleParameters("s must be at least 2")
        blue = frozenset(int(b) for b in self.blue)
        if not blue <= set(range(1, self.s - 1)):
            raise InfeasibleParameters(f"blue must be a subset of 1..{self.s - 2}")
        object.__setattr__(self, "blue", blue)

    @classmethod
    def all_blue(cls, s: int, odd_extension: bool = False) -> "ExtremalSpec":
        return cls(s, frozenset(range(1, s - 1)), odd_extension)


def extremal_vertex(x: int, row: int) -> int:
    """Vertex id of column x (1-based) in row 1 or 2."""
    return 2 * (x - 1) + (row - 1)


def gen_extremal(spec: ExtremalSpec) -> tuple[Graph, tuple[int, ...]]:
    """The 2 x s planar graph attaining t = 3n/2 - 2, with its colouring.

    Column x has a vertical edge of colour 3x-2; columns x and x+1 are joined
    by two horizontals (colour 3x) and two diagonals (colour 3x-1); a blue
    edge (b,1)-(b+2,1) gets colour 3b+1, which is extreme at both ends.
    """
    from .colouring import verify_interval

    s = spec.s
    edges: list[tuple[int, int]] = []
    colours: list[int] = []

    def add(a, b, c):
        edges.append((a, b))
        colours.append(c)

    for x in range(1, s + 1):
        add(extremal_vertex(x, 1), extremal_vertex(x, 2), 3 * x - 2)
        if x < s:
            add(extremal_vertex(x, 1), extremal_vertex(x + 1, 2), 3 * x - 1)
            add(extremal_vertex(x, 2), extremal_vertex(x + 1, 1), 3 * x - 1)
            add(extremal_vertex(x, 1), extremal_vertex(x + 1, 1), 3 * x)
            add(extremal_vertex(x, 2), extremal_vertex(x + 1, 2), 3 * x)
    for b in sorted(spec.blue):
        add(extremal_vertex(b, 1), extremal_vertex(b + 2, 1), 3 * b + 1)
    n = 2 * s
    if spec.odd_extension:
        t = max(colours)
        ends = [v for i, c in enumerate(colours) if c == t for v in edges[i]]
        add(min(ends), n, t + 1)
        n += 1
    g = Graph(n, tuple(edges))
    if not verify_interval(g, colours):
        raise AssertionError("extremal colouring is not an interval colouring")
    return g, tuple(colours)


def blue_edge_indices(spec: ExtremalSpec) -> list[int]:
    """Edge indices of the blue edges in gen_extremal's output."""
    first = spec.s + 4 * (spec.s - 1)
    return list(range(first, first + len(spec.blue)))


# --- random bipartite layers -------------------------------------------------


@dataclass(frozen=True)
class LowerBoundSpec:
    a: int
    n: int
    alpha: Fraction
    p: float | None = None
    seed: int = 0
    trim: bool = True

    def __post_init__(self):
        alpha = Fraction(self.alpha)
        if not 0 < alpha <= Fraction(1, 2):
            raise InfeasibleParameters("alpha must lie in (0, 1/2]")
        object.__setattr__(self, "alpha", alpha)
        if self.p is not None and not 0 <= self.p <= 1:
            raise InfeasibleParameters("p must lie in [0, 1]")
        if self.a < 0 or self.n < 0:
            raise InfeasibleParameters("part sizes must be non-negative")

    @property
    def probability(self) -> float:
        return float(4 * self.alpha / 3) if self.p is None else self.p

    @property
    def target_degree(self) -> int:
        return math.floor(self.alpha * self.n)


def _sample_layer(rng: random.Random, a: int, n: int, p: float, target: int | None,
                  attempts: int = 100) -> list[list[int]]:
    """Left neighbourhoods (as right indices 0..n-1) of a random bipartite graph.

    With a target degree, overfull vertices lose uniformly random edges and
    underfull ones are resampled.
    """
    nbhds = []
    for _ in range(a):
        for _attempt in range(attempts):
            nb = [j for j in range(n) if rng.random() < p]
            if target is None:
                break
            if len(nb) >= target:
                nb = sorted(rng.sample(nb, target))
                break
        else:
            raise ResamplingBudgetExceeded(
                f"could not reach degree {target} with p={p} after {attempts} attempts"
            )
        nbhds.append(nb)
    return nbhds


def gen_lower_bound_layer(spec: LowerBoundSpec) -> tuple[Graph, Bipartition]:
    """Random bipartite graph between A (vertices 0..a-1) and B (a..a+n-1).

    Each edge appears with probability 4 alpha / 3 unless ``p`` is given;
    with ``trim`` every left vertex ends with degree exactly floor(alpha n).
    """
    rng = random.Random(spec.seed)
    target = spec.target_degree if spec.trim else None
    nbhds = _sample_layer(rng, spec.a, spec.n, spec.probability, target)
    edges = [(x, spec.a + j) for x, nb in enumerate(nbhds) for j in nb]
    g = Graph(spec.a + spec.n, tuple(edges))
    return g, Bipartition(tuple([0] * spec.a + [1] * spec.n), True)


@dataclass
class StarSample:
    size: int
    overloaded: int
    threshold: float
    passed: bool


@dataclass
class StarReport:
    samples: list[StarSample] = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(1 for s in self.samples if not s.passed)

    @property
    def violation_rate(self) -> float:
        return self.violations / len(self.samples) if self.samples else 0.0

    def to_dict(self) -> dict:
        return {
            "samples": len(self.samples),
            "violations": self.violations,
            "violation_rate": self.violation_rate,
            "max_overloaded": max((s.overloaded for s in self.samples), default=0),
        }


def check_star_property(g: Graph, bip: Bipartition, alpha, samples: int = 200,
                        seed: int = 0) -> StarReport:
    """Sampled check of the pseudo-randomness property of a bipartite layer.

    For random U in B (sizes cycling through powers of two) count the left
    vertices y with |U & N(y)| > 2 alpha |U| and compare against
    24 |B| / (alpha |U|).  A statistical check, not a proof.
    """
    alpha = Fraction(alpha)
    rng = random.Random(seed)
    left = bip.part(0)
    right = bip.part(1)
    report = StarReport()
    if not right:
        return report
    nbrs = {y: set(g.neighbours(y)) for y in left}
    sizes = [1 << i for i in range(len(right).bit_length()) if 1 << i <= len(right)]
    for i in range(samples):
        size = sizes[i % len(sizes)]
        u = set(rng.sample(right, size))
        over = sum(1 for y in left if len(u & nbrs[y]) > 2 * alpha * size)
        threshold = float(24 * len(right) / (alpha * size))
        report.samples.append(StarSample(size, over, threshold, over <= threshold))
    return report


class LayeredUnion(NamedTuple):
    graph: Graph
    layer: tuple[int, ...]  # layer index (1-based) for left vertices, 0 for B
    right: tuple[int, ...]


@dataclass(frozen=True)
class UnionSpec:
    """Union of t trimmed layers sharing the right part B (|B| = n).

    Layer i has its own left part of size floor(sqrt n) and left degree
    floor(2^-i n).
    """

    n: int
    t: int
    seed: int = 0

    def __post_init__(self):
        if self.t < 1:
            raise InfeasibleParameters("t must be at least 1")
        if self.n >> self.t < 1:
            raise InfeasibleParameters("n too small for the deepest layer")

    @property
    def alphas(self) -> list[Fraction]:
        return [Fraction(1, 2**i) for i in range(1, self.t + 1)]

    @property
    def a(self) -> int:
        return math.isqrt(self.n)


def gen_union(spec: UnionSpec) -> LayeredUnion:
    a, n = spec.a, spec.n
    left_total = a * spec.t
    edges = []
    layer = []
    for i, alpha in enumerate(spec.alphas, start=1):
        sub = LowerBoundSpec(a, n, alpha, seed=spec.seed * 1000003 + i, trim=True)
        h, _ = gen_lower_bound_layer(sub)
        off = (i - 1) * a
        for x, y in h.edges:
            edges.append((off + x, left_total + (y - a)))
        layer.extend([i] * a)
    g = Graph(left_total + n, tuple(edges))
    layer.extend([0] * n)
    return LayeredUnion(g, tuple(layer), tuple(range(left_total, left_total + n)))


# --- standard families -------------------------------------------------------


def path(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise InfeasibleParameters("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def star(k: int) -> Graph:
    return complete_bipartite(1, k)


def random_tree(n: int, seed: int = 0) -> Graph:
    """Uniform labelled tree from a random Pruefer sequence."""
    if n <= 1:
        return Graph(max(n, 0), ())
    if n == 2:
        return Graph(2, ((0, 1),))
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [v for v in range(n) if degree[v] == 1]
    edges.append((u, v))
    return Graph(n, tuple(edges))


def random_biregular(a: int, b: int, d_a: int, d_b: int, seed: int = 0,
                     max_restarts: int = 100) -> Graph:
    """Bipartite graph, left degrees d_a and right degrees d_b.

    Configuration model: pair left and right stubs at random, then repair
    repeated pairs by swapping right endpoints with other edges.
    """
    if a * d_a != b * d_b:
        raise InfeasibleParameters("a * d_a must equal b * d_b")
    if d_a > b or d_b > a or min(a, b, d_a, d_b) < 0:
        raise InfeasibleParameters("degrees exceed the opposite part")
    rng = random.Random(seed)
    left = [x for x in range(a) for _ in range(d_a)]
    for _ in range(max_restarts):
        right = [a + y for y in range(b) for _ in range(d_b)]
        rng.shuffle(right)
        pairs = list(zip(left, right))
        for _sweep in range(50 * len(pairs) + 10):
            count: dict[tuple[int, int], int] = {}
            for p in pairs:
                count[p] = count.get(p, 0) + 1
            bad = [i for i, p in enumerate(pairs) if count[p] > 1]
            if not bad:
                return Graph(a + b, tuple(pairs))
            i = rng.choice(bad)
            j = rng.randrange(len(pairs))
            (x1, y1), (x2, y2) = pairs[i], pairs[j]
            new1, new2 = (x1, y2), (x2, y1)
            if (new1 not in count or new1 == pairs[j]) and (new2 not in count or new2 == pairs[i]):
                pairs[i], pairs[j] = new1, new2
    raise InfeasibleParameters("configuration model repair failed")


def knsqrtn(n: int) -> Graph:
    return complete_bipartite(n, math.isqrt(n))


def hub_gadget(hubs: int = 4, leaves_per_hub: int = 6) -> Graph:
    """A centre joined to every leaf; leaves hang off pairwise-adjacent hubs.

    Vertex 0 is the centre, then the hubs, then the leaves.  Any two leaves are
    linked by leaf-hub-hub-leaf with degree sum 2(leaves_per_hub + hubs - 1) + 4,
    which is below the centre's degree once leaves_per_hub is large enough,
    so the graph is not interval colourable.
    """
    n = 1 + hubs + hubs * leaves_per_hub
    edges = []
    for i in range(hubs):
        for j in range(i + 1, hubs):
            edges.append((1 + i, 1 + j))
    leaf = 1 + hubs
    for i in range(hubs):
        for _ in range(leaves_per_hub):
            edges.append((1 + i, leaf))
            edges.append((0, leaf))
            leaf += 1
    return Graph(n, tuple(edges))


FAMILIES = ("path", "cycle", "complete", "complete_bipartite", "random_tree",
            "random_biregular", "knsqrtn", "star", "hub_gadget")


def gen_standard(family: str, seed: int = 0, **params) -> Graph:
    try:
        if family == "path":
            return path(params["n"])
        if family == "cycle":
            return cycle(params["n"])
        if family == "complete":
            return complete(params["n"])
        if family == "complete_bipartite":
            return complete_bipartite(params["a"], params["b"])
        if family == "star":
            return star(params["k"])
        if family == "random_tree":
            return random_tree(params["n"], seed)
        if family == "random_biregular":
            return random_biregular(params["a"], params["b"], params["d_a"], params["d_b"], seed)
        if family == "knsqrtn":
            return knsqrtn(params["n"])
        if family == "hub_gadget":
            return hub_gadget(params.get("hubs", 4), params.get("leaves_per_hub", 6))
    except KeyError as exc:
        raise InfeasibleParameters(f"family {family!r} needs parameter {exc.args[0]!r}") from None
    raise InfeasibleParameters(f"unknown family {family!r}")


def random_gnp(n: int, p: float, seed: int = 0) -> Graph:
    rng = random.Random(seed)
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p))
