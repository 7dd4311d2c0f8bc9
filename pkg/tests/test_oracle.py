import itertools
import random

import numpy as np
import pytest

from powergraph import (
    BudgetExceeded,
    Graph,
    SearchBudget,
    brute_force_dim,
    complete_graph,
    graph_iso,
    is_resolving,
    power_graph,
    twin_partition,
)

from conftest import G, exhaustive_dim


class TestIsResolving:
    def test_complete_graph_any_n_minus_one(self):
        k5 = complete_graph(5)
        for omitted in range(5):
            witnesses = [v for v in range(5) if v != omitted]
            assert is_resolving(k5, witnesses)
        assert not is_resolving(k5, [0, 1, 2])

    def test_z6_example(self, z6):
        pg = power_graph(z6)
        assert is_resolving(pg, [0, 1, 2, 3])
        assert not is_resolving(pg, [0, 1, 2])

    def test_empty_witness_list(self, z6):
        assert not is_resolving(power_graph(z6), [])
        assert is_resolving(power_graph(G("Z(1)")), [])


class TestBruteForceDim:
    @pytest.mark.parametrize("spec,expected", [
        ("Z(9)", 8), ("Z(6)", 4), ("Q(8)", 4), ("Z(2)xZ(2)", 2), ("Z(1)", 0),
    ])
    def test_known_values(self, spec, expected):
        g = G(spec)
        value, witness = brute_force_dim(power_graph(g), twin_partition(g))
        assert value == expected
        assert len(witness) == expected
        assert is_resolving(power_graph(g), witness)

    def test_matches_unpruned_subset_scan(self, corpus_groups):
        for spec, g in corpus_groups:
            if g.n > 9:
                continue
            pg = power_graph(g)
            value, witness = brute_force_dim(pg, twin_partition(g))
            assert value == exhaustive_dim(pg), spec

    def test_witness_is_lexicographically_least(self, z6):
        pg = power_graph(z6)
        value, witness = brute_force_dim(pg, twin_partition(z6))
        candidates = [c for c in itertools.combinations(range(6), value)
                      if is_resolving(pg, c)]
        assert witness == min(candidates)

    def test_candidate_budget(self, z6):
        with pytest.raises(BudgetExceeded) as err:
            brute_force_dim(power_graph(z6), twin_partition(z6),
                            SearchBudget(max_vertices=48, max_candidates=0, seconds=60))
        assert err.value.upper == 5

    def test_vertex_cap(self):
        g = G("Z(30)")
        with pytest.raises(BudgetExceeded):
            brute_force_dim(power_graph(g), twin_partition(g),
                            SearchBudget(max_vertices=10, max_candidates=10, seconds=60))


class TestGraphIso:
    def test_power_graph_of_z4_is_k4(self):
        assert graph_iso(power_graph(G("Z(4)")), complete_graph(4)) is not None

    def test_k4_vs_star(self):
        assert graph_iso(power_graph(G("Z(4)")), power_graph(G("Z(2)xZ(2)"))) is None

    def test_d3_vs_s3(self):
        mapping = graph_iso(power_graph(G("D(3)")), power_graph(G("S(3)")))
        assert mapping is not None
        adj1 = power_graph(G("D(3)")).adj
        adj2 = power_graph(G("S(3)")).adj
        perm = np.array(mapping)
        assert np.array_equal(adj2[np.ix_(perm, perm)], adj1)

    def test_symmetry(self, corpus_groups):
        small = [(s, g) for s, g in corpus_groups if g.n <= 9]
        for (s1, g1), (s2, g2) in itertools.combinations(small, 2):
            a = graph_iso(power_graph(g1), power_graph(g2)) is not None
            b = graph_iso(power_graph(g2), power_graph(g1)) is not None
            assert a == b, (s1, s2)

    def test_against_networkx_on_random_graphs(self):
        nx = pytest.importorskip("networkx")
        rng = random.Random(5151)
        for trial in range(60):
            n = rng.randrange(1, 9)
            def rand_graph():
                adj = np.zeros((n, n), dtype=bool)
                for i in range(n):
                    for j in range(i + 1, n):
                        if rng.random() < 0.45:
                            adj[i, j] = adj[j, i] = True
                return Graph(adj)
            g1, g2 = rand_graph(), rand_graph()
            if rng.random() < 0.5:
                # permuted copy, to exercise positive cases
                perm = list(range(n))
                rng.shuffle(perm)
                inv = np.argsort(perm)
                g2 = Graph(g1.adj[np.ix_(inv, inv)])
            gx1 = nx.Graph(); gx1.add_nodes_from(range(n)); gx1.add_edges_from(g1.edges())
            gx2 = nx.Graph(); gx2.add_nodes_from(range(n)); gx2.add_edges_from(g2.edges())
            expected = nx.is_isomorphic(gx1, gx2)
            got = graph_iso(g1, g2) is not None
            assert got == expected, trial

    def test_mapping_preserves_edges_both_ways(self):
        g1 = power_graph(G("Z(12)"))
        g2 = power_graph(G("Z(12)"))
        mapping = graph_iso(g1, g2)
        perm = np.array(mapping)
        assert np.array_equal(g2.adj[np.ix_(perm, perm)], g1.adj)

    def test_vertex_cap(self):
        big = complete_graph(20)
        with pytest.raises(BudgetExceeded):
            graph_iso(big, big)

    def test_candidate_budget(self):
        g = power_graph(G("Z(12)"))
        with pytest.raises(BudgetExceeded):
            graph_iso(g, g, SearchBudget(max_vertices=16, max_candidates=2, seconds=60))
