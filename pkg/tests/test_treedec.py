import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxtw.decompose import heuristic_decompose
from boxtw.errors import InvalidDecompositionError
from boxtw.families import random_partial_ktree
from boxtw.graph import Graph
from boxtw import treedec
from boxtw.treedec import (
    NormalizedTreeDecomposition,
    TreeDecomposition,
    check_normalized,
    normalize,
    td_from_elimination_order,
    validate_td,
)

from conftest import complete_graph, cycle_graph, graphs, path_graph

K3 = complete_graph(3)


def single_bag(n):
    return TreeDecomposition.build({1: set(range(1, n + 1))}, [], n)


class TestValidate:
    def test_k3_single_bag(self):
        rep = validate_td(K3, single_bag(3))
        assert rep.ok and rep.width == 2
        assert rep.lines()[-1] == "width=2"

    def test_k3_uncovered_edge(self):
        td = TreeDecomposition.build({1: {1, 2}, 2: {2, 3}}, [(1, 2)], 3)
        rep = validate_td(K3, td)
        assert not rep.ok
        assert [(v.kind, v.witness) for v in rep.violations] == [("T2", (1, 3))]

    def test_c4_two_bags(self):
        td = TreeDecomposition.build({1: {1, 2, 3}, 2: {1, 3, 4}}, [(1, 2)], 4)
        rep = validate_td(cycle_graph(4), td)
        assert rep.ok and rep.width == 2

    def test_missing_vertex(self):
        td = TreeDecomposition.build({1: {1, 2}}, [], 3)
        kinds = {v.kind for v in validate_td(path_graph(2), td).violations}
        assert "T1" in kinds or "range" in kinds

    def test_disconnected_trace(self):
        td = TreeDecomposition.build({1: {1, 2}, 2: {2, 3}, 3: {1}}, [(1, 2), (2, 3)], 3)
        rep = validate_td(path_graph(3), td)
        assert [v.kind for v in rep.violations] == ["T3"]
        assert rep.violations[0].witness[0] == 1

    @pytest.mark.parametrize("pair_cap", [None, 0])
    @given(nodes=st.integers(1, 12), n=st.integers(1, 6), data=st.data())
    @settings(max_examples=150, deadline=None)
    def test_matches_brute_force(self, pair_cap, nodes, n, data):
        parents = [data.draw(st.integers(1, i)) for i in range(1, nodes)]
        edges = [(p, i + 2) for i, p in enumerate(parents)]
        bags = {i: data.draw(st.sets(st.integers(1, n), max_size=n)) for i in range(1, nodes + 1)}
        g = data.draw(graphs(min_n=n, max_n=n))
        td = TreeDecomposition.build(bags, edges, n)
        tree = nx.Graph(edges)
        tree.add_nodes_from(bags)
        held = {v: [i for i in bags if v in bags[i]] for v in g.vertices}
        want = {
            "T1": [v for v in g.vertices if not held[v]],
            "T2": [(u, v) for u, v in g.edges() if not set(held[u]) & set(held[v])],
            "T3": [v for v in g.vertices if held[v] and not nx.is_connected(tree.subgraph(held[v]))],
        }
        with pytest.MonkeyPatch.context() as mp:
            if pair_cap is not None:
                mp.setattr(treedec, "_PAIR_CAP", pair_cap)
            rep = validate_td(g, td)
        got = {k: [] for k in want}
        for viol in rep.violations:
            got[viol.kind].append(viol.witness[0] if viol.kind == "T3" else viol.witness)
        assert got == want

    def test_not_a_tree(self):
        td = TreeDecomposition.build({1: {1, 2}, 2: {2, 3}, 3: {2}}, [(1, 2), (2, 3), (1, 3)], 3)
        assert "tree" in {v.kind for v in validate_td(path_graph(3), td).violations}

    def test_forest_is_not_a_tree(self):
        td = TreeDecomposition.build({1: {1}, 2: {2}}, [], 2)
        assert "tree" in {v.kind for v in validate_td(Graph.empty(2), td).violations}


class TestNormalize:
    def test_k3_chain(self):
        ntd = normalize(K3, single_bag(3))
        assert isinstance(ntd, NormalizedTreeDecomposition)
        assert ntd.bags == {1: {1}, 2: {1, 2}, 3: {1, 2, 3}}
        assert ntd.root == 1
        assert ntd.parent == {1: None, 2: 1, 3: 2}
        assert ntd.b_map == {1: 1, 2: 2, 3: 3}
        assert ntd.h_map == {1: 0, 2: 1, 3: 2}

    def test_single_vertex(self):
        ntd = normalize(Graph.empty(1), single_bag(1))
        assert ntd.bags == {1: {1}} and ntd.b_map == {1: 1} and ntd.h_map == {1: 0}

    def test_path_two_bags(self):
        g = path_graph(3)
        td = TreeDecomposition.build({1: {1, 2}, 2: {2, 3}}, [(1, 2)], 3)
        ntd = normalize(g, td)
        assert ntd.num_nodes == 3 and ntd.width == 1
        for child, par in ntd.parent.items():
            if par is not None:
                assert len(ntd.bags[child] - ntd.bags[par]) == 1
        assert check_normalized(g, ntd) == []

    def test_subsumed_bags_are_contracted(self):
        g = path_graph(3)
        td = TreeDecomposition.build({1: {2}, 2: {1, 2}, 3: {2, 3}, 4: {3}}, [(1, 2), (1, 3), (3, 4)], 3)
        ntd = normalize(g, td)
        assert ntd.num_nodes == 3 and validate_td(g, ntd).ok

    def test_rejects_invalid(self):
        td = TreeDecomposition.build({1: {1, 2}, 2: {2, 3}}, [(1, 2)], 3)
        with pytest.raises(InvalidDecompositionError) as exc:
            normalize(K3, td)
        assert not exc.value.report.ok

    def test_rejects_empty_graph(self):
        with pytest.raises(ValueError):
            normalize(Graph.empty(0), TreeDecomposition.build({}, [], 0))

    def test_isolated_vertices(self):
        g = Graph.from_edges(5, [(2, 3)])
        ntd = normalize(g, heuristic_decompose(g))
        assert check_normalized(g, ntd) == [] and validate_td(g, ntd).ok

    @given(graphs(max_n=14), st.integers(0, 3), st.sampled_from(["min-degree", "min-fill"]))
    @settings(max_examples=150, deadline=None)
    def test_properties(self, g, seed, strategy):
        td = heuristic_decompose(g, strategy, seed)
        ntd = normalize(g, td)
        assert validate_td(g, ntd).ok
        assert ntd.width == td.width
        assert ntd.num_nodes == g.n
        assert check_normalized(g, ntd) == []
        assert sorted(ntd.b_map.values()) == sorted(ntd.bags)
        for u, v in g.edges():
            bu, bv = ntd.b_map[u], ntd.b_map[v]
            assert ntd.is_ancestor(bu, bv) or ntd.is_ancestor(bv, bu)

    def test_partial_ktree_keeps_width(self):
        g, td = random_partial_ktree(80, 4, seed=3)
        ntd = normalize(g, td)
        assert ntd.width == 4 and check_normalized(g, ntd) == []


class TestEliminationOrderTD:
    def test_cycle(self):
        g = cycle_graph(5)
        td = td_from_elimination_order(g, [1, 2, 3, 4, 5])
        assert validate_td(g, td).ok and td.width == 2

    def test_disconnected(self):
        g = Graph.from_edges(6, [(1, 2), (4, 5), (5, 6)])
        td = td_from_elimination_order(g, [6, 1, 5, 2, 3, 4])
        assert validate_td(g, td).ok and td.width == 1
