from __future__ import annotations

import numpy as np
import pytest
from scipy import sparse

from oracles import dense_cosine

from journalmap import UsageError, ValidationError, ego_subset, local_basemap, submatrix
from journalmap.citation import CitationMatrix


def matrix_from_dense(a, titles=None):
    a = np.asarray(a, dtype=float)
    titles = titles or [f"J{i}" for i in range(a.shape[0])]
    return CitationMatrix(titles=titles, counts=sparse.csr_matrix(a))


def ego_fixture():
    # seed (0) cites A(1):12, B(2):9, C(3):15; others cite back a bit
    a = np.zeros((5, 5))
    a[0, 1] = 12
    a[0, 2] = 9
    a[0, 3] = 15
    a[1, 0] = 3
    a[3, 0] = 20
    a[4, 0] = 1
    return matrix_from_dense(a, ["Seed J", "A J", "B J", "C J", "D J"])


class TestEgoSubset:
    def test_min_count_filter(self):
        m = ego_fixture()
        members = ego_subset(m, 0, min_count=10, direction="cited_by_seed")
        assert members == [0, 3, 1]  # seed first, then by count desc (15, 12)

    def test_vacuous_filter_keeps_all_cited(self):
        m = ego_fixture()
        members = ego_subset(m, 0, min_count=1, direction="cited_by_seed")
        assert set(members) == {0, 1, 2, 3}

    def test_citing_direction_uses_column(self):
        m = ego_fixture()
        members = ego_subset(m, 0, min_count=2, direction="citing_seed")
        assert members == [0, 3, 1]  # cited 20 and 3 times by others

    def test_top_n_with_boundary_ties(self):
        a = np.zeros((6, 6))
        a[0, 1] = 5
        a[0, 2] = 3
        a[0, 3] = 3
        a[0, 4] = 3
        a[0, 5] = 1
        m = matrix_from_dense(a)
        members = ego_subset(m, 0, min_count=1, top_n=2)
        # cap of 2 lands inside the tie group at count 3: keep the whole group
        assert members == [0, 1, 2, 3, 4]

    def test_deterministic_and_idempotent(self):
        m = ego_fixture()
        first = ego_subset(m, 0, min_count=1)
        assert first == ego_subset(m, 0, min_count=1)

    def test_bad_parameters(self):
        m = ego_fixture()
        with pytest.raises(UsageError):
            ego_subset(m, 0, min_count=0)
        with pytest.raises(UsageError):
            ego_subset(m, 99)
        with pytest.raises(UsageError):
            ego_subset(m, 0, direction="outward")


class TestLocalBasemap:
    def test_two_mutually_citing_journals(self):
        a = np.zeros((4, 4))
        # members 0 and 1 cite the same two targets, so their citing rows agree
        a[0, 2] = 4
        a[0, 3] = 2
        a[1, 2] = 4
        a[1, 3] = 2
        m = matrix_from_dense(a)
        graph, partition, layout = local_basemap(m, [0, 1, 2, 3], tau=0.2)
        assert graph.n_nodes == 2
        d = np.linalg.norm(layout.xy[0] - layout.xy[1])
        assert d == pytest.approx(1.0, abs=1e-12)

    def test_disconnected_member_dropped_with_warning(self, caplog):
        a = np.zeros((6, 6))
        # component {0, 2, 3}: all three cite journal 0's targets alike
        a[0, 2] = 4
        a[2, 0] = 1
        a[2, 3] = 1
        a[3, 0] = 1
        a[3, 2] = 1
        a[0, 3] = 1
        # separate pair {1, 4} citing only journal 5
        a[1, 5] = 3
        a[4, 5] = 3
        m = matrix_from_dense(a)
        with caplog.at_level("WARNING"):
            graph, _p, _l = local_basemap(m, [0, 1, 2, 3, 4, 5], tau=0.0)
        members = set(graph.nodes.tolist())
        assert 1 not in members and 4 not in members
        assert "dropped" in caplog.text

    def test_local_cosines_match_submatrix_oracle(self):
        rng = np.random.default_rng(55)
        a = np.where(rng.random((10, 10)) < 0.5, rng.integers(1, 30, (10, 10)), 0)
        m = matrix_from_dense(a)
        members = [0, 2, 3, 5, 7, 8]
        local, idx = submatrix(m, members)
        assert idx == members
        sub_dense = a[np.ix_(members, members)]
        oracle = dense_cosine(sub_dense, "citing")
        from journalmap import cosine_similarity_graph

        g = cosine_similarity_graph(local, "citing")
        got = {(int(i), int(j)): w for i, j, w in zip(g.edge_i, g.edge_j, g.weights)}
        k = len(members)
        for i in range(k):
            for j in range(i + 1, k):
                if oracle[i, j] > 0:
                    assert got[(i, j)] == pytest.approx(oracle[i, j], abs=1e-10)
                else:
                    assert (i, j) not in got

    def test_needs_two_members(self):
        m = ego_fixture()
        with pytest.raises(ValidationError):
            local_basemap(m, [0])
