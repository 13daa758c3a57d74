import random
from fractions import Fraction

import networkx as nx
import pytest

from intcol.bounds import (
    _violated_flow,
    SPARSITY_KS,
    arboricity_formula,
    check_sparsity,
    check_t_bounds,
    least_sparsity_k,
    max_excess_enumerate,
    max_excess_flow,
    sparsity_bound,
)
from intcol.generators import ExtremalSpec, complete, cycle, gen_extremal, path, random_gnp
from intcol.graph import Graph
from intcol.oracles import brute_arboricity, brute_sparsity
from intcol.smallgraphs import graphs_up_to


class TestSparsity:
    def test_k4_k2(self):
        assert not check_sparsity(complete(4), 2)

    def test_c5_k2(self):
        assert check_sparsity(cycle(5), 2)

    def test_planar_k3(self):
        for s in range(2, 9):
            g, _ = gen_extremal(ExtremalSpec.all_blue(s, s % 2 == 1))
            assert check_sparsity(g, 3)
        assert check_sparsity(complete(4), 3) and not check_sparsity(complete(5), 3)

    def test_against_subset_oracle(self):
        for g in graphs_up_to(6):
            for k in SPARSITY_KS:
                assert check_sparsity(g, k) == brute_sparsity(g, k)

    def test_flow_matches_enumeration(self):
        rng = random.Random(8)
        for _ in range(40):
            g = random_gnp(rng.randint(3, 12), rng.uniform(0.2, 0.9), rng.randrange(10**6))
            for k in (Fraction(2), Fraction(5, 2), Fraction(3)):
                assert max_excess_flow(g, k) == max_excess_enumerate(g, k)

    def test_connected_decision_matches_enumeration(self):
        rng = random.Random(9)
        for i in range(80):
            g = random_gnp(rng.randint(3, 10), rng.uniform(0.1, 0.9), i)
            for k in (1, Fraction(3, 2), 2, 3):
                assert _violated_flow(g, Fraction(k)) == (max_excess_enumerate(g, k) > 0)

    def test_large_graphs_use_flow(self):
        g = nx.grid_2d_graph(5, 6)
        idx = {v: i for i, v in enumerate(g.nodes)}
        h = Graph(g.number_of_nodes(), tuple((idx[a], idx[b]) for a, b in g.edges))
        assert h.n > 20
        assert check_sparsity(h, 2) and not check_sparsity(complete(22), 3)

    def test_tiny_graphs_are_vacuous(self):
        assert check_sparsity(path(2), 0) and check_sparsity(Graph(0, ()), 2)

    def test_least_k(self):
        assert least_sparsity_k(cycle(5)) == 2
        assert least_sparsity_k(complete(4)) == 3
        assert least_sparsity_k(complete(7)) is None

    def test_bound_formula(self):
        assert sparsity_bound(14, 3) == 19
        assert sparsity_bound(7, Fraction(5, 2)) == Fraction(29, 4)


class TestTBounds:
    def test_g14(self):
        g, _ = gen_extremal(ExtremalSpec.all_blue(7))
        report = check_t_bounds(g, 19)
        tight = {c.name for c in report.checks if c.tight}
        assert report.ok and "sparsity k=3" in tight

    def test_c4(self):
        report = check_t_bounds(cycle(4), 3)
        named = {c.name: c for c in report.checks}
        assert named["triangle-free n-1"].tight and report.ok

    def test_k2(self):
        report = check_t_bounds(path(2), 1)
        assert report.ok and all(c.name != "general 2n-4" for c in report.checks)

    def test_violation_reported(self):
        report = check_t_bounds(cycle(4), 5)
        assert not report.ok
        assert report.to_dict()["ok"] is False


class TestArboricity:
    def test_against_oracle(self):
        for g in graphs_up_to(6)[::3]:
            assert arboricity_formula(g) == brute_arboricity(g)

    def test_refuses_large(self):
        with pytest.raises(ValueError):
            arboricity_formula(complete(21))
