from __future__ import annotations

import numpy as np
import pytest

from conftest import make_graph, random_graph
from oracles import best_partition_by_enumeration, brute_modularity, no_single_move_improves

from journalmap import UsageError, ValidationError, louvain, modularity
from journalmap.communities import Partition, read_partition_csv, write_partition_csv


class TestModularity:
    def test_complete_graph_single_community(self):
        k4 = make_graph(4, [(i, j, 1.0) for i in range(4) for j in range(i + 1, 4)])
        assert modularity(k4, {i: 0 for i in range(4)}, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_two_triangles_gamma_one(self, two_triangles):
        by_triangle = {0: 0, 1: 0, 2: 0, 3: 1, 4: 1, 5: 1}
        # 2 * (3/6 - (6/12)^2) = 0.5
        assert modularity(two_triangles, by_triangle, 1.0) == pytest.approx(0.5, abs=1e-15)

    def test_two_triangles_gamma_two(self, two_triangles):
        by_triangle = {0: 0, 1: 0, 2: 0, 3: 1, 4: 1, 5: 1}
        # 2 * (3/6 - 2*(6/12)^2) = 0
        assert modularity(two_triangles, by_triangle, 2.0) == pytest.approx(0.0, abs=1e-15)

    def test_zero_weight_graph_undefined(self):
        g = make_graph(3, [])
        with pytest.raises(ValidationError, match="modularity undefined"):
            modularity(g, {0: 0, 1: 0, 2: 0}, 1.0)

    def test_partition_must_cover_graph(self, two_triangles):
        with pytest.raises(ValidationError, match="cover"):
            modularity(two_triangles, {0: 0, 1: 0}, 1.0)

    def test_gamma_must_be_positive(self, two_triangles):
        with pytest.raises(UsageError):
            modularity(two_triangles, {i: 0 for i in range(6)}, 0.0)

    def test_matches_brute_oracle_on_random_graphs(self):
        rng = np.random.default_rng(42)
        for _ in range(25):
            n, edges = random_graph(rng, n_max=8)
            labels = {i: int(rng.integers(0, 3)) for i in range(n)}
            g = make_graph(n, edges)
            for gamma in (0.5, 1.0, 2.0):
                assert modularity(g, labels, gamma) == pytest.approx(
                    brute_modularity(n, edges, labels, gamma), abs=1e-12
                )


class TestLouvain:
    def test_two_triangles_found_exactly(self, two_triangles):
        p = louvain(two_triangles, gamma=1.0)
        assert p.n_communities == 2
        assert p.q == pytest.approx(0.5, abs=1e-12)
        assert {p.labels[0], p.labels[1], p.labels[2]} == {p.labels[0]}
        assert p.labels[0] != p.labels[3]
        best_q, _ = best_partition_by_enumeration(
            6, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0)], 1.0
        )
        assert p.q == pytest.approx(best_q, abs=1e-12)

    def test_single_edge_matches_enumeration(self):
        g = make_graph(2, [(0, 1, 1.0)])
        p = louvain(g, gamma=1.0)
        best_q, _ = best_partition_by_enumeration(2, [(0, 1, 1.0)], 1.0)
        assert p.q == pytest.approx(best_q, abs=1e-12)
        assert p.n_communities == 1

    def test_reported_q_is_consistent(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n, edges = random_graph(rng, n_max=10)
            g = make_graph(n, edges)
            p = louvain(g, gamma=1.0)
            assert p.q == pytest.approx(modularity(g, p.labels, 1.0), abs=1e-12)

    def test_labels_contiguous_and_total(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            n, edges = random_graph(rng, n_max=10)
            p = louvain(make_graph(n, edges), gamma=1.0)
            assert set(p.labels.keys()) == set(range(n))
            assert set(p.labels.values()) == set(range(p.n_communities))

    def test_gamma_monotone_on_fixture(self, two_triangles):
        n1 = louvain(two_triangles, gamma=1.0).n_communities
        n4 = louvain(two_triangles, gamma=4.0).n_communities
        assert n4 >= n1
        assert n4 == 6  # singletons win at gamma=4

    def test_local_optimum_always(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            n, edges = random_graph(rng, n_max=7, connected=True)
            for refinement in ("single_level", "multi_level"):
                p = louvain(make_graph(n, edges), gamma=1.0, refinement=refinement)
                assert no_single_move_improves(n, edges, p.labels, 1.0)

    def test_deterministic_for_fixed_seed(self):
        rng = np.random.default_rng(3)
        n, edges = random_graph(rng, n_max=10, connected=True)
        g = make_graph(n, edges)
        p1 = louvain(g, gamma=1.0, seed=0)
        p2 = louvain(g, gamma=1.0, seed=0)
        assert p1.labels == p2.labels and p1.q == p2.q
        p3 = louvain(g, gamma=1.0, seed=5)
        p4 = louvain(g, gamma=1.0, seed=5)
        assert p3.labels == p4.labels

    def test_zero_weight_rejected(self):
        with pytest.raises(ValidationError):
            louvain(make_graph(3, []), gamma=1.0)

    def test_bad_refinement_rejected(self, two_triangles):
        with pytest.raises(UsageError):
            louvain(two_triangles, refinement="triple_level")

    def test_isolated_nodes_become_singletons(self):
        g = make_graph(4, [(0, 1, 1.0)])
        p = louvain(g, gamma=1.0)
        assert p.labels[0] == p.labels[1]
        assert p.labels[2] != p.labels[3]
        assert p.n_communities == 3


class TestPartitionCsv:
    def test_round_trip(self, tmp_path, two_triangles):
        p = louvain(two_triangles, gamma=1.0)
        path = tmp_path / "partition.csv"
        write_partition_csv(p, two_triangles.titles, path)
        rows = read_partition_csv(path)
        assert rows == [(f"J{i}", p.labels[i]) for i in range(6)]
        # byte-stable on rewrite
        first = path.read_bytes()
        write_partition_csv(p, two_triangles.titles, path)
        assert path.read_bytes() == first

    def test_partition_validates_contiguity(self):
        with pytest.raises(ValidationError):
            Partition(labels={0: 0, 1: 2}, n_communities=2, q=0.0, gamma=1.0)
