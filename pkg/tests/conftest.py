from itertools import combinations, permutations
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import strategies as st

from boxtw.graph import Graph

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, chosen) if keep])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    """Relabel to 1..n in sorted node order."""
    nodes = sorted(h.nodes)
    idx = {v: i + 1 for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), [(idx[u], idx[v]) for u, v in h.edges])


def brute_treewidth(g: Graph) -> int:
    """Min over all elimination orders of the largest later-neighbourhood."""
    best = g.n - 1
    for order in permutations(g.vertices):
        adj = {v: set(g.neighbors(v)) for v in g.vertices}
        worst = 0
        for v in order:
            nb = adj.pop(v)
            worst = max(worst, len(nb))
            for u in nb:
                adj[u] |= nb - {u}
                adj[u].discard(v)
            if worst >= best:
                break
        best = min(best, worst)
    return max(best, 0)


def brute_intersection_edges(boxes: dict[int, list[tuple[int, int]]]) -> set[tuple[int, int]]:
    out = set()
    for u, v in combinations(sorted(boxes), 2):
        if all(max(a[0], b[0]) <= min(a[1], b[1]) for a, b in zip(boxes[u], boxes[v])):
            out.add((u, v))
    return out


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(1, n + 1), 2))
