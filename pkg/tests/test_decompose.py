import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxtw.decompose import (
    exact_small_treewidth,
    heuristic_decompose,
    small_vc_and_fvs,
    td_from_feedback_vertex_set,
    td_from_vertex_cover,
)
from boxtw.errors import LimitError, PreconditionError
from boxtw.families import random_partial_ktree, roberts_graph
from boxtw.graph import Graph
from boxtw.treedec import validate_td

from conftest import brute_treewidth, complete_graph, cycle_graph, graphs, path_graph

C4 = cycle_graph(4)
STAR = Graph.from_edges(4, [(1, 2), (1, 3), (1, 4)])
TREE5 = Graph.from_edges(5, [(1, 2), (1, 3), (3, 4), (3, 5)])


class TestHeuristic:
    @pytest.mark.parametrize("strategy", ["min-degree", "min-fill"])
    def test_tree(self, strategy):
        assert heuristic_decompose(TREE5, strategy).width == 1

    @pytest.mark.parametrize("strategy", ["min-degree", "min-fill"])
    def test_k5(self, strategy):
        assert heuristic_decompose(complete_graph(5), strategy).width == 4

    def test_partial_3tree(self):
        g, _ = random_partial_ktree(50, 3, seed=1)
        for strategy in ("min-degree", "min-fill"):
            td = heuristic_decompose(g, strategy, seed=1)
            assert validate_td(g, td).ok and td.width >= 3

    def test_deterministic(self):
        g, _ = random_partial_ktree(120, 4, seed=5)
        a = heuristic_decompose(g, "min-fill", 11)
        b = heuristic_decompose(g, "min-fill", 11)
        assert a == b

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            heuristic_decompose(C4, "max-degree")


class TestExact:
    def test_c5(self):
        w, td = exact_small_treewidth(cycle_graph(5))
        assert w == 2 == brute_treewidth(cycle_graph(5))
        assert validate_td(cycle_graph(5), td).ok

    def test_k4(self):
        assert exact_small_treewidth(complete_graph(4))[0] == 3

    def test_p4(self):
        assert exact_small_treewidth(path_graph(4))[0] == 1

    def test_edgeless(self):
        assert exact_small_treewidth(Graph.empty(3))[0] == 0

    def test_limit(self):
        with pytest.raises(LimitError):
            exact_small_treewidth(path_graph(13))

    @given(graphs(max_n=7))
    @settings(max_examples=80, deadline=None)
    def test_matches_permutation_search(self, g):
        w, td = exact_small_treewidth(g)
        assert w == brute_treewidth(g)
        rep = validate_td(g, td)
        assert rep.ok and rep.width == w

    @given(graphs(max_n=11), st.integers(0, 5))
    @settings(max_examples=60, deadline=None)
    def test_heuristic_never_beats_exact(self, g, seed):
        w, _ = exact_small_treewidth(g)
        assert heuristic_decompose(g, "min-degree", seed).width >= w
        assert heuristic_decompose(g, "min-fill", seed).width >= w

    def test_partial_ktree_subsamples(self):
        for seed in range(6):
            g, td = random_partial_ktree(12, 3, seed=seed)
            assert exact_small_treewidth(g)[0] <= td.width == 3


class TestVertexCover:
    def test_star(self):
        td = td_from_vertex_cover(STAR, {1})
        assert validate_td(STAR, td).ok and td.width == 1
        assert sorted(map(sorted, td.bags.values())) == [[1], [1, 2], [1, 3], [1, 4]]

    def test_c4(self):
        td = td_from_vertex_cover(C4, {1, 3})
        assert validate_td(C4, td).ok and td.width == 2
        assert {frozenset({1, 2, 3}), frozenset({1, 3, 4})} <= set(td.bags.values())

    def test_k3(self):
        td = td_from_vertex_cover(complete_graph(3), {1, 2})
        assert td.width == 2 and frozenset({1, 2, 3}) in td.bags.values()

    def test_full_cover(self):
        td = td_from_vertex_cover(C4, {1, 2, 3, 4})
        assert list(td.bags.values()) == [frozenset({1, 2, 3, 4})]

    def test_not_a_cover(self):
        with pytest.raises(PreconditionError) as exc:
            td_from_vertex_cover(C4, {1})
        assert exc.value.witness == (2, 3)


class TestFeedbackVertexSet:
    def test_c4(self):
        td = td_from_feedback_vertex_set(C4, {1})
        assert validate_td(C4, td).ok and td.width == 2

    def test_tree(self):
        td = td_from_feedback_vertex_set(TREE5, set())
        assert validate_td(TREE5, td).ok and td.width == 1

    def test_k4(self):
        g = complete_graph(4)
        td = td_from_feedback_vertex_set(g, {1, 2})
        assert validate_td(g, td).ok and td.width == 3

    def test_forest_with_isolated_vertices(self):
        g = Graph.from_edges(7, [(1, 2), (2, 3), (1, 3), (4, 5)])
        td = td_from_feedback_vertex_set(g, {1})
        assert validate_td(g, td).ok and td.width <= 2

    def test_not_an_fvs(self):
        with pytest.raises(PreconditionError) as exc:
            td_from_feedback_vertex_set(cycle_graph(5), set())
        assert sorted(exc.value.witness) == [1, 2, 3, 4, 5]


class TestSmallCovers:
    def test_c4(self):
        mvc, mfvs = small_vc_and_fvs(C4)
        assert len(mvc) == 2 and len(mfvs) == 1

    def test_roberts_half2(self):
        assert len(small_vc_and_fvs(roberts_graph(2))[0]) == 2 * 2 - 2

    def test_k5(self):
        assert len(small_vc_and_fvs(complete_graph(5))[0]) == 4

    def test_roberts_mvc_formula(self):
        for h in range(2, 6):
            assert len(small_vc_and_fvs(roberts_graph(h))[0]) == 2 * h - 2

    def test_limit(self):
        with pytest.raises(LimitError):
            small_vc_and_fvs(path_graph(21))

    @given(graphs(max_n=9))
    @settings(max_examples=80, deadline=None)
    def test_bounds(self, g):
        mvc, mfvs = small_vc_and_fvs(g)
        tvc = td_from_vertex_cover(g, mvc)
        tfv = td_from_feedback_vertex_set(g, mfvs)
        assert validate_td(g, tvc).ok and tvc.width <= len(mvc)
        assert validate_td(g, tfv).ok and tfv.width <= len(mfvs) + 1
