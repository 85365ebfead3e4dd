import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diversinet.graph import (
    EdgeListParseError,
    Graph,
    derive_degree_rank_subgraph,
    generate_er,
    giant_component,
    khop_neighborhood,
    load_edge_list,
    mean_degree,
    reach_mask,
    serialize_edge_list,
)
from oracles import oracle_pairs_within, random_graph


def graph_strategy(max_n=12):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        return Graph(n, edges)

    return build()


class TestGraphBasics:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph(3, [(1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Graph(2, [(0, 2)])

    def test_edges_sorted_and_symmetric(self):
        g = Graph(4, [(2, 1), (0, 3), (1, 2)])
        assert list(g.edges()) == [(0, 3), (1, 2)]
        assert g.has_edge(1, 2) and g.has_edge(2, 1)
        assert g.edge_count == 2


class TestLoadEdgeList:
    def test_triangle(self):
        g = load_edge_list("0 1\n1 2\n2 0\n")
        assert (g.node_count, g.edge_count) == (3, 3)

    def test_self_loop_and_duplicate_collapse(self):
        g = load_edge_list("5 5\n5 6\n6 5\n")
        assert (g.node_count, g.edge_count) == (2, 1)

    def test_comments_and_blank_lines(self):
        g = load_edge_list("# a comment\n\n10 20\n# another\n20 30\n")
        assert (g.node_count, g.edge_count) == (3, 2)

    def test_first_appearance_order(self):
        g = load_edge_list("7 3\n3 9\n")
        # 7 -> 0, 3 -> 1, 9 -> 2
        assert g.edge_set() == {(0, 1), (1, 2)}

    def test_malformed_line_reports_number(self):
        with pytest.raises(EdgeListParseError, match="line 3"):
            load_edge_list("0 1\n1 2\nnot numbers\n")
        with pytest.raises(EdgeListParseError, match="line 1"):
            load_edge_list("1 2 3\n")

    def test_header_preserves_isolated_nodes(self):
        g = load_edge_list("# 10 nodes, 0 edges\n")
        assert (g.node_count, g.edge_count) == (10, 0)

    def test_header_rejects_out_of_range_ids(self):
        with pytest.raises(EdgeListParseError, match="line 2"):
            load_edge_list("# 3 nodes, 1 edges\n2 5\n")

    @settings(max_examples=60)
    @given(graph_strategy())
    def test_serialize_then_load_round_trips(self, g):
        again = load_edge_list(serialize_edge_list(g))
        assert again.node_count == g.node_count
        assert again.edge_set() == g.edge_set()


class TestGenerateEr:
    def test_p_zero(self):
        g = generate_er(10, 0.0, np.random.default_rng(0))
        assert (g.node_count, g.edge_count) == (10, 0)

    def test_p_one_complete(self):
        g = generate_er(10, 1.0, np.random.default_rng(0))
        assert g.edge_count == 45

    def test_deterministic_per_seed(self):
        a = generate_er(30, 0.2, np.random.default_rng(7))
        b = generate_er(30, 0.2, np.random.default_rng(7))
        assert a.edge_set() == b.edge_set()

    def test_edge_count_concentrates(self):
        # E[m] = C(100,2) * 0.1 = 495; the mean over 200 seeds should sit
        # within 3 standard errors
        counts = [
            generate_er(100, 0.1, np.random.default_rng(1000 + s)).edge_count
            for s in range(200)
        ]
        expected = 4950 * 0.1
        sigma = (4950 * 0.1 * 0.9) ** 0.5
        assert abs(np.mean(counts) - expected) <= 3 * sigma / np.sqrt(200)

    def test_mean_degree_near_paper_scale(self):
        degs = [
            mean_degree(generate_er(1000, 0.025, np.random.default_rng(s)))
            for s in range(3)
        ]
        assert abs(np.mean(degs) - 24.975) < 0.8

    def test_validates_inputs(self):
        with pytest.raises(ValueError):
            generate_er(0, 0.5, np.random.default_rng(0))
        with pytest.raises(ValueError):
            generate_er(5, 1.5, np.random.default_rng(0))


class TestGiantComponent:
    def test_path_all_alive(self):
        g = Graph(3, [(0, 1), (1, 2)])
        assert giant_component(g, [True] * 3) == {0, 1, 2}

    def test_two_components(self):
        g = Graph(5, [(0, 1), (1, 2), (3, 4)])
        assert giant_component(g, [True] * 5) == {0, 1, 2}

    def test_tie_breaks_to_smallest_index(self):
        # cutting the middle node leaves singletons {0} and {2}; ties go to
        # the component with the smallest node index
        g = Graph(3, [(0, 1), (1, 2)])
        assert giant_component(g, [True, False, True]) == {0}

    def test_mask_length_checked(self):
        with pytest.raises(ValueError):
            giant_component(Graph(2), [True])

    @settings(max_examples=60)
    @given(graph_strategy(), st.data())
    def test_size_bounded_by_alive(self, g, data):
        alive = data.draw(st.lists(st.booleans(), min_size=g.node_count, max_size=g.node_count))
        comp = giant_component(g, alive)
        assert len(comp) <= sum(alive)
        assert all(alive[i] for i in comp)


class TestKhop:
    def test_path_two_hops(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3)])
        assert khop_neighborhood(g, 0, 2) == {0, 1, 2}

    def test_zero_hops_is_identity(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3)])
        assert khop_neighborhood(g, 2, 0) == {2}

    def test_star_leaf_two_hops_covers_all(self):
        g = Graph(6, [(0, i) for i in range(1, 6)])
        assert khop_neighborhood(g, 1, 2) == set(range(6))


class TestReachMask:
    def test_path_distances(self):
        g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        m = reach_mask(g, 1)
        assert m.covers(0, 2)
        assert not m.covers(0, 3)

    def test_reflexive(self):
        g = Graph(4, [(0, 1)])
        m = reach_mask(g, 1)
        assert all(m.covers(i, i) for i in range(4))

    def test_complete_graph_all_pairs(self):
        g = Graph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
        m = reach_mask(g, 1)
        assert m.pairs.all()

    def test_matches_khop_cross_check(self, rng):
        # independent route: Floyd-Warshall distances
        for _ in range(25):
            n = int(rng.integers(2, 50))
            g = random_graph(rng, n, float(rng.random() * 0.2))
            k = int(rng.integers(1, 3))
            m = reach_mask(g, k)
            want = oracle_pairs_within(g, 2 * k)
            got = {(i, j) for i in range(n) for j in range(n) if m.pairs[i, j]}
            assert got == want
            for i in range(n):
                assert {j for j in range(n) if m.pairs[i, j]} == khop_neighborhood(g, i, 2 * k)


class TestDegreeRankSubgraph:
    def test_star_top_rank_is_center(self):
        g = Graph(5, [(0, i) for i in range(1, 5)])
        sub = derive_degree_rank_subgraph(g, 1, 1)
        assert (sub.node_count, sub.edge_count) == (1, 0)

    def test_full_window_gives_largest_component(self):
        g = Graph(6, [(0, 1), (1, 2), (3, 4)])
        sub = derive_degree_rank_subgraph(g, 1, 6)
        assert (sub.node_count, sub.edge_count) == (3, 2)

    def test_ties_broken_by_node_index(self):
        # degrees: 0:2 1:2 2:2 3:1 4:1 -> ranks [0,1,2,3,4]
        g = Graph(5, [(0, 1), (1, 2), (2, 0), (3, 4)])
        sub = derive_degree_rank_subgraph(g, 1, 2)
        # window {0,1} keeps edge (0,1)
        assert (sub.node_count, sub.edge_count) == (2, 1)

    def test_window_validated(self):
        g = Graph(3, [(0, 1)])
        with pytest.raises(ValueError):
            derive_degree_rank_subgraph(g, 0, 2)
        with pytest.raises(ValueError):
            derive_degree_rank_subgraph(g, 2, 4)
