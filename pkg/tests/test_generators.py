import random
from fractions import Fraction

import networkx as nx
import pytest

from intcol.colouring import t_max, verify_interval
from intcol.generators import (
    ExtremalSpec,
    InfeasibleParameters,
    LowerBoundSpec,
    ResamplingBudgetExceeded,
    UnionSpec,
    blue_edge_indices,
    check_star_property,
    extremal_vertex,
    gen_extremal,
    gen_lower_bound_layer,
    gen_standard,
    gen_union,
    random_gnp,
)
from intcol.graph import Bipartition, Graph, bipartition, subgraph


def _random_specs(rng, s_max=12, per_s=3):
    for s in range(2, s_max + 1):
        pool = list(range(1, s - 1))
        yield ExtremalSpec.all_blue(s)
        for _ in range(per_s):
            yield ExtremalSpec(s, frozenset(b for b in pool if rng.random() < 0.5), rng.random() < 0.5)


class TestExtremal:
    def test_g14(self):
        g, c = gen_extremal(ExtremalSpec.all_blue(7))
        assert g.n == 14 and sorted(set(c)) == list(range(1, 20))

    def test_s2(self):
        g, c = gen_extremal(ExtremalSpec(2))
        assert g.n == 4 and g.m == 6  # K4
        v = extremal_vertex
        assert c[g.edge_index(v(1, 1), v(1, 2))] == 1
        assert c[g.edge_index(v(2, 1), v(2, 2))] == 4
        assert c[g.edge_index(v(1, 1), v(2, 2))] == 2 == c[g.edge_index(v(1, 2), v(2, 1))]
        assert t_max(g) == 4

    def test_s3_odd(self):
        g, c = gen_extremal(ExtremalSpec(3, odd_extension=True))
        assert g.n == 7 and sorted(set(c)) == list(range(1, 9))
        assert t_max(g) == 8 == 3 * 7 // 2 - 2

    def test_valid_and_counted(self):
        rng = random.Random(1)
        for spec in _random_specs(rng):
            g, c = gen_extremal(spec)
            assert verify_interval(g, c)
            assert len(set(c)) == 3 * spec.s - 2 + spec.odd_extension
            assert g.n == 2 * spec.s + spec.odd_extension
            assert g.m == 5 * spec.s - 4 + len(spec.blue) + spec.odd_extension

    def test_planar(self):
        rng = random.Random(2)
        for spec in _random_specs(rng, s_max=10, per_s=1):
            g, _ = gen_extremal(spec)
            assert nx.check_planarity(g.to_networkx())[0]

    def test_blue_colours_are_extreme(self):
        for s in range(3, 10):
            spec = ExtremalSpec.all_blue(s)
            g, c = gen_extremal(spec)
            for e in blue_edge_indices(spec):
                for x in g.edges[e]:
                    around = [c[f] for _, f in g.adjacency[x]]
                    assert c[e] in (min(around), max(around))

    def test_removing_blue_edges_keeps_colouring(self):
        rng = random.Random(3)
        for s in range(3, 10):
            spec = ExtremalSpec.all_blue(s)
            g, c = gen_extremal(spec)
            blue = blue_edge_indices(spec)
            drop = {e for e in blue if rng.random() < 0.5}
            keep = [e for e in range(g.m) if e not in drop]
            assert verify_interval(subgraph(g, keep).graph, [c[e] for e in keep])

    def test_odd_extension_tie_rule(self):
        g, c = gen_extremal(ExtremalSpec(4, odd_extension=True))
        top = max(c[:-1])
        ends = [min(g.edges[e]) for e in range(g.m - 1) if c[e] == top]
        assert g.edges[-1][0] == min(ends) and c[-1] == top + 1

    @pytest.mark.parametrize("s, blue", [(1, ()), (4, (3,)), (4, (0,))])
    def test_invalid(self, s, blue):
        with pytest.raises(InfeasibleParameters):
            ExtremalSpec(s, frozenset(blue))


class TestLowerBound:
    def test_degrees(self):
        g, bip = gen_lower_bound_layer(LowerBoundSpec(4, 64, Fraction(1, 4), seed=0))
        assert [g.degree(v) for v in bip.part(0)] == [16] * 4
        assert bip.valid and bipartition(g) is not None

    def test_complete(self):
        g, _ = gen_lower_bound_layer(LowerBoundSpec(3, 5, Fraction(1, 4), p=1.0, trim=False))
        assert g.m == 15

    def test_empty(self):
        g, _ = gen_lower_bound_layer(LowerBoundSpec(3, 5, Fraction(1, 4), p=0.0, trim=False))
        assert g.m == 0

    def test_deterministic(self):
        spec = LowerBoundSpec(8, 128, Fraction(1, 8), seed=4)
        assert gen_lower_bound_layer(spec)[0] == gen_lower_bound_layer(spec)[0]
        other = LowerBoundSpec(8, 128, Fraction(1, 8), seed=5)
        assert gen_lower_bound_layer(spec)[0] != gen_lower_bound_layer(other)[0]

    def test_budget(self):
        with pytest.raises(ResamplingBudgetExceeded):
            gen_lower_bound_layer(LowerBoundSpec(2, 64, Fraction(1, 2), p=0.05))

    @pytest.mark.parametrize("kw", [dict(alpha=Fraction(3, 4)), dict(alpha=0), dict(p=1.5)])
    def test_invalid(self, kw):
        base = dict(a=2, n=8, alpha=Fraction(1, 4))
        base.update(kw)
        with pytest.raises(InfeasibleParameters):
            LowerBoundSpec(**base)

    def test_default_probability(self):
        assert LowerBoundSpec(2, 8, Fraction(3, 8)).probability == 0.5


class TestStar:
    def test_empty_graph(self):
        g = Graph(6, ())
        bip = Bipartition((0, 0, 1, 1, 1, 1), True)
        report = check_star_property(g, bip, Fraction(1, 4), samples=20)
        assert report.violations == 0 and all(s.overloaded == 0 for s in report.samples)

    def test_complete_half(self):
        g = gen_standard("complete_bipartite", a=4, b=8)
        report = check_star_property(g, bipartition(g), Fraction(1, 2), samples=40)
        assert report.violation_rate == 0.0
        assert all(s.overloaded == 0 for s in report.samples)

    def test_sizes_are_powers_of_two(self):
        g, bip = gen_lower_bound_layer(LowerBoundSpec(16, 256, Fraction(1, 8)))
        report = check_star_property(g, bip, Fraction(1, 8), samples=200, seed=1)
        sizes = {s.size for s in report.samples}
        assert sizes == {1 << i for i in range(9)}
        assert report.to_dict()["samples"] == 200

    def test_detects_overload(self):
        # every left vertex sees all of B; 800 exceeds 24 |B| / (alpha |U|) for every |U|
        g = gen_standard("complete_bipartite", a=800, b=4)
        bip = bipartition(g)
        report = check_star_property(g, bip, Fraction(1, 8), samples=10)
        assert report.violations == 10


class TestUnion:
    def test_single_layer(self):
        u = gen_union(UnionSpec(64, 1))
        assert u.graph.n == 8 + 64 and set(u.layer) == {0, 1}

    def test_three_layers(self):
        u = gen_union(UnionSpec(512, 3, seed=1))
        g = u.graph
        assert g.n == 512 + 3 * 22
        for i, want in zip((1, 2, 3), (256, 128, 64)):
            assert {g.degree(v) for v in range(g.n) if u.layer[v] == i} == {want}
        assert bipartition(g) is not None

    def test_right_part_is_shared(self):
        u = gen_union(UnionSpec(64, 2))
        right = set(u.right)
        assert all((x in right) != (y in right) for x, y in u.graph.edges)

    def test_invalid(self):
        with pytest.raises(InfeasibleParameters):
            UnionSpec(4, 3)
        with pytest.raises(InfeasibleParameters):
            UnionSpec(64, 0)


class TestStandard:
    def test_cycle(self):
        g = gen_standard("cycle", n=5)
        assert g.n == 5 and g.degrees() == [2] * 5

    def test_complete(self):
        assert gen_standard("complete", n=5).m == 10

    def test_biregular(self):
        g = gen_standard("random_biregular", a=4, b=6, d_a=3, d_b=2, seed=3)
        assert g.degrees() == [3] * 4 + [2] * 6

    def test_biregular_many_seeds(self):
        for seed in range(20):
            g = gen_standard("random_biregular", a=6, b=9, d_a=3, d_b=2, seed=seed)
            assert g.degrees() == [3] * 6 + [2] * 9

    def test_biregular_infeasible(self):
        with pytest.raises(InfeasibleParameters):
            gen_standard("random_biregular", a=4, b=6, d_a=2, d_b=2)

    def test_knsqrtn(self):
        g = gen_standard("knsqrtn", n=16)
        assert (g.n, g.m) == (20, 64)

    def test_tree_deterministic(self):
        a = gen_standard("random_tree", n=30, seed=9)
        assert a == gen_standard("random_tree", n=30, seed=9) and a.is_acyclic() and a.m == 29

    def test_unknown_family_and_missing_param(self):
        with pytest.raises(InfeasibleParameters):
            gen_standard("petersen")
        with pytest.raises(InfeasibleParameters):
            gen_standard("cycle")

    def test_gnp_extremes(self):
        assert random_gnp(6, 0.0).m == 0 and random_gnp(6, 1.0).m == 15
