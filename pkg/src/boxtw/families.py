"""Named graphs, the treewidth-vs-boxicity lower-bound family, and seeded
random instance generators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, isqrt
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .classes import ArcFamily
from .graph import Graph
from .treedec import TreeDecomposition, td_from_elimination_order


def roberts_graph(half: int) -> Graph:
    """K_{2*half} minus the perfect matching {2i-1, 2i}."""
    if half < 1:
        raise ValueError("half must be at least 1")
    n = 2 * half
    edges = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if not (u % 2 == 1 and v == u + 1)
    ]
    return Graph.from_edges(n, edges)


def complete_kpartite(sizes: Sequence[int]) -> Graph:
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("part sizes must be a non-empty list of positive integers")
    part = []
    for i, s in enumerate(sizes):
        part.extend([i] * s)
    n = len(part)
    edges = [(u + 1, v + 1) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]]
    return Graph.from_edges(n, edges)


@dataclass(frozen=True)
class TightnessInstance:
    """Core ``parts[0]`` (size t) plus one part per small subset of the core.

    ``subset_map[i]`` is the core subset that part i stands for and
    ``matchings[i]`` pairs each vertex of part i with a vertex of that subset.
    """

    t: int
    graph: Graph
    parts: list[tuple[int, ...]]
    subset_map: dict[int, tuple[int, ...]]
    matchings: dict[int, dict[int, int]]
    star_td: TreeDecomposition

    @property
    def alpha(self) -> int:
        return len(self.parts) - 1


def tightness_alpha(t: int) -> int:
    return sum(comb(t, j) for j in range(1, isqrt(t) + 1))


def tightness_vertex_count(t: int) -> int:
    return t + sum(j * comb(t, j) for j in range(1, isqrt(t) + 1))


def tightness_instance(t: int) -> TightnessInstance:
    """Graph of treewidth at most t + isqrt(t) whose boxicity is at least t - isqrt(t).

    The star decomposition's largest bag has t + isqrt(t) vertices, so its
    width is t + isqrt(t) - 1.

    Edges: every part is a clique; a core vertex u and a vertex x of part i
    are adjacent unless u is x's partner. Subsets are enumerated by size,
    then lexicographically; partners pair the part's vertices with the
    subset's in ascending order. Vertex ids: core first, then parts in order.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    core = tuple(range(1, t + 1))
    parts: list[tuple[int, ...]] = [core]
    subset_map: dict[int, tuple[int, ...]] = {}
    matchings: dict[int, dict[int, int]] = {}
    nxt = t + 1
    for size in range(1, isqrt(t) + 1):
        for subset in combinations(core, size):
            i = len(parts)
            block = tuple(range(nxt, nxt + size))
            nxt += size
            parts.append(block)
            subset_map[i] = subset
            matchings[i] = dict(zip(block, subset))
    n = nxt - 1
    edges = []
    for block in parts:
        edges.extend(combinations(block, 2))
    for i in range(1, len(parts)):
        for x in parts[i]:
            edges.extend((u, x) for u in core if u != matchings[i][x])
    graph = Graph.from_edges(n, edges)
    bags = {0: frozenset(core)}
    bags.update({i: frozenset(core) | frozenset(parts[i]) for i in range(1, len(parts))})
    star = TreeDecomposition.build(bags, [(0, i) for i in range(1, len(parts))], n)
    return TightnessInstance(t, graph, parts, subset_map, matchings, star)


class TreeComponentResult(NamedTuple):
    component: frozenset[int] | None
    k: int | None
    hypothesis_met: bool


def small_tree_component(n: int, edges: Iterable[tuple[int, int]], r) -> TreeComponentResult:
    """Find a component with k <= r nodes and exactly k - 1 edges in a multigraph.

    Nodes are 1..n; ``edges`` may repeat pairs and contain loops. Such a
    component must exist when the edge count is at most ``n - n/r``; the
    result records whether that hypothesis held. Components are scanned by
    smallest node id and the first qualifying one is returned.
    """
    edges = list(edges)
    r = Fraction(r)
    if r < 1:
        raise ValueError("r must be at least 1")
    hypothesis = Fraction(len(edges)) <= n - Fraction(n) / r
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"edge ({u}, {v}) out of range 1..{n}")
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    nodes: dict[int, list[int]] = {}
    for x in range(1, n + 1):
        nodes.setdefault(find(x), []).append(x)
    ecount: dict[int, int] = {}
    for u, _ in edges:
        root = find(u)
        ecount[root] = ecount.get(root, 0) + 1
    for root, members in sorted(nodes.items(), key=lambda kv: kv[1][0]):
        k = len(members)
        if k <= r and ecount.get(root, 0) == k - 1:
            return TreeComponentResult(frozenset(members), k, hypothesis)
    return TreeComponentResult(None, None, hypothesis)


def random_partial_ktree(n: int, k: int, seed: int = 0, p_delete: float = 0.2) -> tuple[Graph, TreeDecomposition]:
    """Random k-tree grown bag by bag, then thinned by random edge deletion.

    Each new vertex joins a random k-subset of a random existing bag. The
    seed clique is never thinned, so the treewidth is exactly k and the
    returned decomposition (one bag per grown vertex) is optimal.
    """
    if not n > k >= 1:
        raise ValueError("need n > k >= 1")
    rng = np.random.default_rng(seed)
    seed_bag = tuple(range(1, k + 2))
    bags = [seed_bag]
    tree_edges = []
    grown: list[tuple[int, int]] = []
    picks = rng.integers(0, 1 << 62, size=(n - k - 1, 2))
    for idx, v in enumerate(range(k + 2, n + 1)):
        b = int(picks[idx, 0] % len(bags))
        drop = int(picks[idx, 1] % (k + 1))
        base = bags[b]
        clique = base[:drop] + base[drop + 1:]
        bags.append(clique + (v,))
        tree_edges.append((b + 1, len(bags)))
        grown.extend((c, v) for c in clique)
    keep = rng.random(len(grown)) >= p_delete
    edges = list(combinations(seed_bag, 2))
    edges.extend(e for e, kept in zip(grown, keep) if kept)
    g = Graph.from_edges(n, edges)
    td = TreeDecomposition.build({i + 1: b for i, b in enumerate(bags)}, tree_edges, n)
    return g, td


def erdos_renyi(n: int, p: float, seed: int = 0) -> Graph:
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(iu.size) < p
    return Graph.from_edges(n, zip((iu[mask] + 1).tolist(), (ju[mask] + 1).tolist()))


def random_chordal(n: int, seed: int = 0, density: float = 2.0) -> Graph:
    """Sparse random graph completed by the fill-in of a random elimination order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    base = erdos_renyi(n, min(1.0, density / max(n, 1)), int(rng.integers(1 << 31)))
    order = [int(v) for v in rng.permutation(np.arange(1, n + 1))]
    td = td_from_elimination_order(base, order)
    edges = set()
    for bag in td.bags.values():
        edges.update(combinations(sorted(bag), 2))
    return Graph.from_edges(n, edges)


def random_permutation(n: int, seed: int = 0) -> list[int]:
    rng = np.random.default_rng(seed)
    return [int(x) for x in rng.permutation(np.arange(1, n + 1))]


def random_arc_family(n: int, m: int, seed: int = 0, max_len: int | None = None) -> ArcFamily:
    """``n`` random arcs on ``m`` points; arc lengths uniform in 1..max_len."""
    rng = np.random.default_rng(seed)
    max_len = max_len or max(1, m // 3)
    starts = rng.integers(0, m, size=n)
    lengths = rng.integers(1, max_len + 1, size=n)
    return ArcFamily(m, {v + 1: (int(s), int((s + ln - 1) % m)) for v, (s, ln) in enumerate(zip(starts, lengths))})
