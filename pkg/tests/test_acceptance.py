"""Exit criteria for the package, one test per criterion.

Run on their own with ``pytest tests/test_acceptance.py``; the terminal
summary prints one PASS/FAIL line per criterion.
"""
import math
import random
import time
from fractions import Fraction

import pytest

from intcol.bounds import check_sparsity, check_t_bounds
from intcol.certificates import search_certificate
from intcol.colouring import (
    SolveOptions,
    Status,
    decide_interval_colourable,
    max_palette,
    split_at_unique_colour,
    verify_alpha_interval,
    verify_interval,
)
from intcol.corpus import certificate_soundness, oracle_equivalence
from intcol.decompose import decompose_pipeline, forest_decomposition, theta_exact, validate_decomposition
from intcol.generators import (
    ExtremalSpec,
    LowerBoundSpec,
    check_star_property,
    complete,
    complete_bipartite,
    cycle,
    gen_extremal,
    gen_lower_bound_layer,
    random_gnp,
    random_tree,
)
from intcol.graph import components, relabel_compact, subgraph
from intcol.oracles import brute_arboricity, brute_interval_colouring
from intcol.smallgraphs import CONNECTED_COUNTS, graphs_up_to

pytestmark = pytest.mark.acceptance


@pytest.mark.criterion(1, "oracle equivalence on all connected graphs with <= 6 vertices")
def test_oracle_equivalence(record_property):
    start = time.monotonic()
    outcome = oracle_equivalence(6)
    elapsed = time.monotonic() - start
    record_property("detail", f"{outcome.instances} graphs, {outcome.failed} disagreements, {elapsed:.1f}s")
    assert outcome.instances == sum(CONNECTED_COUNTS[:7]) - CONNECTED_COUNTS[0]
    assert len(graphs_up_to(6, connected=True, min_n=6)) == 112
    assert outcome.passed, outcome.to_dict()["counterexamples"]
    assert elapsed < 600


@pytest.mark.criterion(2, "t(G14) = 19 and t = 3s-2 for s in 2..4")
def test_extremal_values(record_property):
    g, colours = gen_extremal(ExtremalSpec.all_blue(7))
    assert g.n == 14
    assert verify_interval(g, colours)
    assert sorted(set(colours)) == list(range(1, 20))
    found = []
    for s in (2, 3, 4):
        h, _ = gen_extremal(ExtremalSpec.all_blue(s))
        start = time.monotonic()
        t = max_palette(h, use_bounds=False).t
        assert time.monotonic() - start < 300
        found.append(t)
        assert t == 3 * s - 2
    record_property("detail", f"G14 colours 1..19, t(s=2,3,4) = {found}")


def _extremal_corpus(rng):
    for s in range(2, 9):
        specs = [ExtremalSpec.all_blue(s), ExtremalSpec(s)]
        pool = list(range(1, s - 1))
        for _ in range(3):
            specs.append(ExtremalSpec(s, frozenset(b for b in pool if rng.random() < 0.5)))
        for spec in specs:
            for odd in (False, True):
                yield gen_extremal(ExtremalSpec(spec.s, spec.blue, odd))


@pytest.mark.criterion(3, "t <= floor(3n/2)-2 on the extremal corpus, tight on full instances")
def test_planar_bound_corpus(record_property):
    rng = random.Random(3)
    full = 0
    for g, colours in _extremal_corpus(rng):
        t = max_palette(g, use_bounds=False).t
        bound = 3 * g.n // 2 - 2
        assert len(set(colours)) == bound
        assert t == bound, (g.n, t)
        full += 1
    subs = 0
    attempts = 0
    while subs < 80 and attempts < 2000:
        attempts += 1
        s = rng.randint(3, 5)
        odd = s < 5 and rng.random() < 0.5
        pool = list(range(1, s - 1))
        g, _ = gen_extremal(ExtremalSpec(s, frozenset(b for b in pool if rng.random() < 0.5), odd))
        keep = [e for e in range(g.m) if rng.random() < 0.75]
        h = subgraph(g, keep).graph
        live = [v for v in range(h.n) if h.degree(v)]
        h, _ = relabel_compact(h, live)
        if h.n > 10 or h.m == 0 or not decide_interval_colourable(h).colourable:
            continue
        t = max_palette(h, use_bounds=False).t
        assert t <= 3 * h.n // 2 - 2 or h.n < 3, (h.to_dict(), t)
        subs += 1
    record_property("detail", f"{full} extremal instances tight, {subs} colourable subgraphs, 0 violations")
    assert subs == 80


def _least_k_bound(g):
    for k in (Fraction(2), Fraction(5, 2), Fraction(3), Fraction(7, 2), Fraction(4)):
        if check_sparsity(g, k):
            return k, k / 2 * g.n + 1 - k
    return None, None


@pytest.mark.criterion(4, "general, triangle-free and sparsity bounds on all colourable graphs with <= 7 vertices")
def test_t_bounds_small_graphs(record_property):
    checked = 0
    for g in graphs_up_to(7):
        t = max_palette(g, use_bounds=False).t
        if t is None:
            continue
        checked += 1
        if g.n >= 3:
            assert t <= 2 * g.n - 4, g.to_dict()
        if g.is_triangle_free():
            assert t <= g.n - 1, g.to_dict()
        k, bound = _least_k_bound(g)
        if k is not None:
            assert t <= bound, (g.to_dict(), k)
        assert check_t_bounds(g, t).ok
    record_property("detail", f"{checked} colourable graphs, 0 violations")


@pytest.mark.criterion(5, "theta exact: 1 on trees, C4, K33, K4; 2 on C3, C5, C7, K5")
def test_theta_exact_values(record_property):
    cases = [(random_tree(9, seed), 1) for seed in range(3)]
    cases += [(cycle(4), 1), (complete_bipartite(3, 3), 1), (complete(4), 1)]
    cases += [(cycle(3), 2), (cycle(5), 2), (cycle(7), 2), (complete(5), 2)]
    slowest = 0.0
    for g, expected in cases:
        start = time.monotonic()
        res = theta_exact(g, 3, SolveOptions(time_limit=60))
        took = time.monotonic() - start
        slowest = max(slowest, took)
        assert res is not None and res.exact
        assert res.theta == expected, (g.to_dict(), res.theta)
        assert not validate_decomposition(g, res.decomposition)
        assert took < 60
    record_property("detail", f"{len(cases)} graphs, slowest {slowest:.2f}s")


@pytest.mark.criterion(6, "pipeline decompositions are sound; forest count is the arboricity")
def test_decomposition_soundness(record_property):
    rng = random.Random(6)
    compared = 0
    for i in range(50):
        n = rng.randint(2, 30)
        p = (i + 1) / 51
        g = random_gnp(n, p, seed=1000 + i)
        dec = decompose_pipeline(g)
        assert not validate_decomposition(g, dec)
        forests = forest_decomposition(g)
        assert all(subgraph(g, f).graph.is_acyclic() for f in forests)
        if g.m:
            assert len(forests) <= math.ceil(math.sqrt(g.m / 2))
        if n <= 8:
            assert len(forests) == brute_arboricity(g)
            compared += 1
    record_property("detail", f"50 graphs, arboricity cross-checked on {compared}")
    assert compared > 0


@pytest.mark.criterion(7, "certificate soundness: no false positives; none on C5, C7")
def test_certificate_soundness(record_property):
    outcome = certificate_soundness(max_n=6, random_graphs=500, random_max_n=12, seed=7)
    assert outcome.passed, outcome.to_dict()["counterexamples"]
    assert search_certificate(cycle(5), "exhaustive") is None
    assert search_certificate(cycle(7), "exhaustive") is None
    # the corpus above is too small and too uniform to contain certifiable
    # graphs, so soundness is also exercised where certificates do exist
    extra = certificate_soundness(max_n=0, gadgets=100, seed=7)
    assert extra.passed, extra.to_dict()["counterexamples"]
    assert extra.positives > 0
    record_property(
        "detail",
        f"{outcome.instances} graphs with {outcome.positives} certificates; "
        f"{extra.instances} gadgets with {extra.positives} certificates; 0 false positives",
    )


@pytest.mark.criterion(8, "lower-bound layer: exact degrees, star property over 5 seeds")
def test_lower_bound_layer(record_property):
    violating = []
    for seed in range(5):
        g, bip = gen_lower_bound_layer(LowerBoundSpec(16, 256, Fraction(1, 8), seed=seed))
        assert [g.degree(v) for v in bip.part(0)] == [32] * 16
        report = check_star_property(g, bip, Fraction(1, 8), samples=200, seed=seed)
        assert len(report.samples) == 200
        if report.violations:
            violating.append((seed, report.violation_rate))
    if violating:
        print(f"star property violations: {violating}")
    record_property("detail", f"violating seeds: {len(violating)} of 5")
    assert len(violating) < 2


@pytest.mark.criterion(9, "unique-colour split on 100 solver colourings")
def test_split_invariant(record_property):
    rng = random.Random(9)
    seen = set()
    done = 0
    while done < 100:
        n = rng.randint(3, 8)
        g = random_gnp(n, rng.uniform(0.2, 0.7), rng.randrange(2**32))
        if len(components(g)) != 1:
            continue
        for seed in range(4):
            res = decide_interval_colourable(g, SolveOptions(seed=seed))
            if not res.colourable:
                break
            if (g, res.witness) in seen:
                continue
            seen.add((g, res.witness))
            split = split_at_unique_colour(g, res.witness)
            if split is None:
                continue
            assert (split.low | split.high).mask == (1 << g.m) - 1
            assert (split.low & split.high).indices() == [split.edge]
            for part in (split.low, split.high):
                sub = subgraph(g, part)
                assert verify_interval(sub.graph, [res.witness[i] for i in sub.edge_map])
            done += 1
            if done == 100:
                break
    record_property("detail", "100 splits, 0 failures")


@pytest.mark.criterion(10, "alpha-interval decisions agree at alpha=1 and are monotone in alpha")
def test_alpha_coherence(record_property):
    alphas = [Fraction(1), Fraction(5, 4), Fraction(3, 2), Fraction(2)]
    graphs = graphs_up_to(5, connected=True)
    gains = 0
    for g in graphs:
        verdicts = []
        for a in alphas:
            res = decide_interval_colourable(g, SolveOptions(alpha=a))
            assert res.status is not Status.TIMEOUT
            if res.colourable:
                assert verify_alpha_interval(g, res.witness, a)
            verdicts.append(res.colourable)
        assert verdicts[0] == (brute_interval_colouring(g) is not None)
        assert verdicts == sorted(verdicts), (g.to_dict(), verdicts)
        gains += verdicts[0] != verdicts[-1]
    record_property("detail", f"{len(graphs)} graphs, {gains} become colourable as alpha grows")
