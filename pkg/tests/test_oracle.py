import pytest
from hypothesis import given, settings

from altpaths import errors
from altpaths.altpath import ParityFrame, validate
from altpaths.graph_core import (
    blowup_directed_cycle,
    enumerate_all_oriented,
    from_edge_list,
    min_pseudo_semidegree,
    random_oriented,
)
from altpaths.oracle import (
    OracleBudget,
    enumerate_respectable_endpoints,
    hamilton_cycle_bipartite_exact,
    has_alt_path_k,
    longest_alt_path_exact,
)
from conftest import oriented_graphs
from _brute import (
    brute_bipartite_ham_cycle_exists,
    brute_longest_alt_path,
    brute_respectable_endpoints,
)


class TestLongestAltPath:
    def test_frozen_values(self):
        # values frozen from the naive DFS referee
        triangle = from_edge_list([(0, 1), (1, 2), (2, 0)], 3)
        assert longest_alt_path_exact(triangle)[0] == 2
        assert longest_alt_path_exact(from_edge_list([], 4))[0] == 1
        assert longest_alt_path_exact(from_edge_list([], 0))[0] == 0
        for b in (1, 2, 3):
            g = blowup_directed_cycle(3, b)
            assert longest_alt_path_exact(g)[0] == 2 * b

    def test_witness_validates(self):
        g = blowup_directed_cycle(4, 2)
        length, wit = longest_alt_path_exact(g)
        assert wit.order == length
        assert validate(g, wit)

    def test_matches_brute_exhaustive_n4(self):
        for g in enumerate_all_oriented(4):
            length, wit = longest_alt_path_exact(g)
            assert length == brute_longest_alt_path(g)
            assert validate(g, wit) and wit.order == length

    def test_matches_brute_random_n7(self):
        for seed in range(40):
            g = random_oriented(7, 0.4 + 0.05 * (seed % 8), seed)
            length, wit = longest_alt_path_exact(g)
            assert length == brute_longest_alt_path(g)
            assert validate(g, wit) and wit.order == length

    def test_budget(self):
        g = from_edge_list([], 5)
        with pytest.raises(errors.TooLarge):
            longest_alt_path_exact(g, OracleBudget(max_n_subset_dp=4))

    def test_bad_budget(self):
        with pytest.raises(errors.BadParams):
            OracleBudget(max_n_subset_dp=0)


class TestHasAltPathK:
    def test_thresholds(self):
        g = blowup_directed_cycle(3, 2)
        assert has_alt_path_k(g, 4)
        assert not has_alt_path_k(g, 5)
        assert has_alt_path_k(g, 0)
        assert not has_alt_path_k(g, 7)

    @given(oriented_graphs(max_n=6))
    @settings(max_examples=80, deadline=None)
    def test_monotone_in_k(self, g):
        length, _ = longest_alt_path_exact(g)
        for k in range(0, g.n + 2):
            assert has_alt_path_k(g, k) == (k <= length)


class TestRespectableEndpoints:
    def test_complete_bipartite(self):
        # every source can start, every sink can end
        edges = [(o, e) for o in (0, 1) for e in (2, 3)]
        g = from_edge_list(edges, 4)
        frame = ParityFrame(frozenset({0, 1}), frozenset({2, 3}), 2)
        starts, ends = enumerate_respectable_endpoints(g, frame)
        assert starts == {0, 1} and ends == {2, 3}

    def test_single_path_frame(self):
        # path 0 -> 2 <- 1 -> 3 forces its own endpoints
        g = from_edge_list([(0, 2), (1, 2), (1, 3)], 4)
        frame = ParityFrame(frozenset({0, 1}), frozenset({2, 3}), 2)
        starts, ends = enumerate_respectable_endpoints(g, frame)
        assert starts == {0} and ends == {3}

    def test_no_path(self):
        g = from_edge_list([(0, 2), (1, 3)], 4)
        frame = ParityFrame(frozenset({0, 1}), frozenset({2, 3}), 2)
        with pytest.raises(errors.NoRespectablePath):
            enumerate_respectable_endpoints(g, frame)

    def test_budget(self):
        g = blowup_directed_cycle(3, 2)
        frame = ParityFrame(frozenset({0, 1}), frozenset({2, 3}), 2)
        with pytest.raises(errors.TooLarge):
            enumerate_respectable_endpoints(g, frame, OracleBudget(max_n_enumeration=3))

    def test_matches_brute_random(self):
        for seed in range(30):
            g = random_oriented(8, 0.6, 100 + seed)
            sources, sinks = {0, 1, 2}, {3, 4, 5}
            bs, be = brute_respectable_endpoints(g, sources, sinks)
            frame = ParityFrame(frozenset(sources), frozenset(sinks), 3)
            if not bs:
                with pytest.raises(errors.NoRespectablePath):
                    enumerate_respectable_endpoints(g, frame)
            else:
                assert enumerate_respectable_endpoints(g, frame) == (bs, be)


class TestBipartiteHamCycle:
    def _check(self, adj_x, adj_y, cycle):
        m = len(adj_x)
        assert len(cycle) == 2 * m
        assert cycle[0] == (0, 0)
        assert {c for c in cycle if c[0] == 0} == {(0, i) for i in range(m)}
        assert {c for c in cycle if c[0] == 1} == {(1, j) for j in range(m)}
        for (sa, a), (sb, b) in zip(cycle, cycle[1:] + cycle[:1]):
            assert sa != sb
            adj = adj_x if sa == 0 else adj_y
            assert (adj[a] >> b) & 1

    def test_complete_m3(self):
        adj = [0b111] * 3
        cycle = hamilton_cycle_bipartite_exact(adj, adj)
        self._check(adj, adj, cycle)

    def test_degree_one_blocks(self):
        # y1 adjacent only to x0, y2 adjacent only to x0: impossible
        adj_x = [0b111, 0b001, 0b001]
        adj_y = [0b111, 0b001, 0b001]
        assert hamilton_cycle_bipartite_exact(adj_x, adj_y) is None

    def test_six_cycle(self):
        adj_x = [0b011, 0b110, 0b101]
        adj_y = [0b101, 0b011, 0b110]
        cycle = hamilton_cycle_bipartite_exact(adj_x, adj_y)
        self._check(adj_x, adj_y, cycle)

    def test_bad_parts(self):
        with pytest.raises(errors.BadParts):
            hamilton_cycle_bipartite_exact([1, 1], [1])
        with pytest.raises(errors.BadParams):
            hamilton_cycle_bipartite_exact([1], [1])

    def test_matches_permutation_brute(self):
        import random

        rng = random.Random(5)
        for _ in range(60):
            m = rng.randrange(2, 5)
            adj_x = [0] * m
            adj_y = [0] * m
            for i in range(m):
                for j in range(m):
                    if rng.random() < 0.6:
                        adj_x[i] |= 1 << j
                        adj_y[j] |= 1 << i
            got = hamilton_cycle_bipartite_exact(adj_x, adj_y)
            want = brute_bipartite_ham_cycle_exists(adj_x, adj_y)
            assert (got is not None) == want
            if got is not None:
                self._check(adj_x, adj_y, got)


class TestKernelTwins:
    def test_python_twin_matches_compiled(self):
        from altpaths._dp_kernels import alt_path_dp_py, run_dp

        for seed in range(20):
            g = random_oriented(8, 0.5, 900 + seed)
            best, bm, bs, reach = run_dp(g.out_masks, g.in_masks, g.n)
            py_reach = [0] * (1 << g.n)
            py_best, py_bm, py_bs = alt_path_dp_py(
                list(g.out_masks), list(g.in_masks), py_reach, 0
            )
            assert best == py_best
            assert list(reach) == py_reach

    def test_early_exit_agrees(self):
        from altpaths._dp_kernels import run_dp

        g = blowup_directed_cycle(4, 2)
        full_best, _, _, _ = run_dp(g.out_masks, g.in_masks, g.n)
        want_best, _, _, _ = run_dp(g.out_masks, g.in_masks, g.n, want_k=3)
        assert full_best == 4 and want_best >= 3


class TestDegreeBoundSmallCases:
    def test_no_small_counterexample(self):
        # at every n <= 4 the degree condition already forces the path
        for n in range(1, 5):
            for g in enumerate_all_oriented(n):
                pseudo = min_pseudo_semidegree(g)
                if pseudo is None:
                    continue
                kmax = (8 * pseudo - 1) // 5
                if kmax >= 1:
                    assert has_alt_path_k(g, kmax)
