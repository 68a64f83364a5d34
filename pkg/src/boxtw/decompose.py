"""Building tree decompositions: heuristics, exact search for small graphs,
and the vertex-cover / feedback-vertex-set constructions."""

from __future__ import annotations

import heapq
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import LimitError, PreconditionError
from .graph import Graph, connected_components
from .treedec import TreeDecomposition, td_from_elimination_order

EXACT_TW_LIMIT = 12
VC_FVS_LIMIT = 20


def _fill_in(adj: dict[int, set[int]], v: int) -> int:
    nb = adj[v]
    # each missing pair is counted once from each side
    return sum(len(nb - adj[a]) - 1 for a in nb) // 2


def elimination_order(g: Graph, strategy: str = "min-degree", seed: int = 0) -> list[int]:
    """Greedy elimination order. Ties go to a seeded random rank."""
    if strategy not in ("min-degree", "min-fill"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = np.random.default_rng(seed)
    rank = {int(v): r for r, v in enumerate(rng.permutation(np.arange(1, g.n + 1)))}
    adj = {v: set(g.neighbors(v)) for v in g.vertices}

    score = len if strategy == "min-degree" else None

    def key(v: int) -> int:
        return len(adj[v]) if score is not None else _fill_in(adj, v)

    current = {v: key(v) for v in g.vertices}
    heap = [(s, rank[v], v) for v, s in current.items()]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        s, _, v = heapq.heappop(heap)
        if v not in adj or current[v] != s:
            continue
        order.append(v)
        nbrs = adj.pop(v)
        del current[v]
        for u in nbrs:
            adj[u].discard(v)
            adj[u] |= nbrs - {u}
        touched = set(nbrs)
        if strategy == "min-fill":
            for u in nbrs:
                touched |= adj[u]
        for u in touched:
            s_new = key(u)
            if s_new != current[u]:
                current[u] = s_new
                heapq.heappush(heap, (s_new, rank[u], u))
    return order


def heuristic_decompose(g: Graph, strategy: str = "min-degree", seed: int = 0) -> TreeDecomposition:
    """Decomposition from a min-degree or min-fill elimination order."""
    return td_from_elimination_order(g, elimination_order(g, strategy, seed))


def _masks(g: Graph) -> list[int]:
    out = []
    for v in g.vertices:
        m = 0
        for u in g.neighbors(v):
            m |= 1 << (u - 1)
        out.append(m)
    return out


def exact_small_treewidth(g: Graph, limit: int = EXACT_TW_LIMIT) -> tuple[int, TreeDecomposition]:
    """Exact treewidth by dynamic programming over vertex subsets.

    ``TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|)``, where
    ``Q(S, v)`` are the vertices outside ``S + v`` reachable from ``v``
    through ``S``. The optimal order is recovered and turned into a
    decomposition whose width equals the returned value.
    """
    n = g.n
    if n == 0:
        raise ValueError("treewidth of the empty graph is undefined here")
    if n > limit:
        raise LimitError(f"exact treewidth limited to n <= {limit}, got n={n}")
    nbr = _masks(g)
    full = (1 << n) - 1

    def q_size(s: int, v: int) -> int:
        reach = nbr[v]
        inner = reach & s
        seen = inner
        while inner:
            low = inner & -inner
            inner ^= low
            fresh = nbr[low.bit_length() - 1] & ~seen & ~(1 << v)
            reach |= fresh
            add = fresh & s
            seen |= add
            inner |= add
        return bin(reach & ~s & ~(1 << v)).count("1")

    tw = [0] * (1 << n)
    choice = [0] * (1 << n)
    tw[0] = -1
    for s in range(1, full + 1):
        best = n + 1
        best_v = -1
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            prev = s ^ low
            val = tw[prev]
            if val >= best:
                continue
            q = q_size(prev, v)
            cand = val if val > q else q
            if cand < best:
                best, best_v = cand, v
        tw[s] = best
        choice[s] = best_v
    order_rev = []
    s = full
    while s:
        v = choice[s]
        order_rev.append(v + 1)
        s ^= 1 << v
    order = order_rev[::-1]
    td = td_from_elimination_order(g, order)
    width = max(tw[full], 0)
    if td.width != width:
        raise AssertionError(f"recovered order has width {td.width}, expected {width}")
    return width, td


def uncovered_edge(g: Graph, cover: Iterable[int]) -> tuple[int, int] | None:
    c = set(cover)
    for u, v in g.edges():
        if u not in c and v not in c:
            return (u, v)
    return None


def td_from_vertex_cover(g: Graph, cover: Iterable[int]) -> TreeDecomposition:
    """Star decomposition: a hub bag ``cover`` plus ``cover + {v}`` per other vertex."""
    c = frozenset(cover)
    if any(not 1 <= v <= g.n for v in c):
        raise ValueError("cover holds out-of-range vertices")
    witness = uncovered_edge(g, c)
    if witness is not None:
        raise PreconditionError(f"not a vertex cover: edge {witness} is uncovered", witness)
    outside = [v for v in g.vertices if v not in c]
    if not outside:
        return TreeDecomposition.build({1: c}, [], g.n)
    bags = {1: c}
    edges = []
    for k, v in enumerate(outside, start=2):
        bags[k] = c | {v}
        edges.append((1, k))
    return TreeDecomposition.build(bags, edges, g.n)


def find_cycle(adj: dict[int, set[int]]) -> list[int] | None:
    """Some cycle of the (simple) graph, as a vertex list, or None for a forest."""
    parent: dict[int, int | None] = {}
    for s in sorted(adj):
        if s in parent:
            continue
        parent[s] = None
        stack = [(s, iter(sorted(adj[s])))]
        while stack:
            v, it = stack[-1]
            for u in it:
                if u == parent[v]:
                    continue
                if u in parent:
                    # u is an ancestor of v on the stack: back edge
                    cycle = [v]
                    w = v
                    while w != u:
                        w = parent[w]
                        cycle.append(w)
                    return cycle[::-1]
                parent[u] = v
                stack.append((u, iter(sorted(adj[u]))))
                break
            else:
                stack.pop()
    return None


def td_from_feedback_vertex_set(g: Graph, fvs: Iterable[int]) -> TreeDecomposition:
    """Width-1 decomposition of the forest ``g - fvs`` with ``fvs`` added to every bag."""
    s = frozenset(fvs)
    if any(not 1 <= v <= g.n for v in s):
        raise ValueError("fvs holds out-of-range vertices")
    forest = g.subgraph_without(s)
    cycle = find_cycle(forest)
    if cycle is not None:
        raise PreconditionError(f"not a feedback vertex set: cycle {cycle} survives", cycle)
    if not forest:
        return TreeDecomposition.build({1: s}, [], g.n)

    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []

    def new_bag(content) -> int:
        k = len(bags) + 1
        bags[k] = frozenset(content) | s
        return k

    anchors = []
    for comp in connected_components(forest):
        r = comp[0]
        if len(comp) == 1:
            anchors.append(new_bag({r}))
            continue
        # edge_bag[v]: bag of the tree edge joining v to its parent
        edge_bag: dict[int, int] = {}
        root_bags: list[int] = []
        seen = {r}
        stack = [r]
        while stack:
            p = stack.pop()
            for c in sorted(forest[p]):
                if c in seen:
                    continue
                seen.add(c)
                k = new_bag({p, c})
                edge_bag[c] = k
                if p == r:
                    if root_bags:
                        edges.append((root_bags[-1], k))
                    root_bags.append(k)
                else:
                    edges.append((edge_bag[p], k))
                stack.append(c)
        anchors.append(root_bags[0])
    for a, b in zip(anchors, anchors[1:]):
        edges.append((a, b))
    return TreeDecomposition.build(bags, edges, g.n)


def small_vc_and_fvs(g: Graph, limit: int = VC_FVS_LIMIT) -> tuple[frozenset[int], frozenset[int]]:
    """Minimum vertex cover and minimum feedback vertex set by exhaustive search.

    Among optimal sets the lexicographically first combination is returned.
    """
    n = g.n
    if n > limit:
        raise LimitError(f"vertex cover / fvs search limited to n <= {limit}, got n={n}")
    edges = [(u - 1, v - 1) for u, v in g.edges()]
    edge_masks = [(1 << u) | (1 << v) for u, v in edges]

    mvc = None
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if all(e & mask for e in edge_masks):
                mvc = frozenset(v + 1 for v in combo)
                break
        if mvc is not None:
            break

    def is_forest_without(mask: int) -> bool:
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (u, v), e in zip(edges, edge_masks):
            if e & mask:
                continue
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    mfvs = None
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if is_forest_without(mask):
                mfvs = frozenset(v + 1 for v in combo)
                break
        if mfvs is not None:
            break
    return mvc, mfvs
