"""Simple undirected graphs over vertex ids 1..n."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import chain
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import LimitError

CLIQUE_NODE_BUDGET = 2_000_000


@dataclass(frozen=True, eq=True)
class Graph:
    """Immutable adjacency-set graph.

    ``adj[v - 1]`` is the neighbour set of vertex ``v``; vertex ids are 1..n
    everywhere in the public API. Array-valued helpers (``csr``) are 0-based.
    """

    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError(f"adjacency has {len(self.adj)} rows, expected {self.n}")
        for i, nbrs in enumerate(self.adj):
            v = i + 1
            if v in nbrs:
                raise ValueError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 1 <= u <= self.n:
                    raise ValueError(f"neighbour {u} of {v} out of range 1..{self.n}")
                if v not in self.adj[u - 1]:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) out of range 1..{n}")
            sets[u - 1].add(v)
            sets[v - 1].add(u)
        return cls._trusted(n, tuple(frozenset(s) for s in sets))

    @classmethod
    def from_edge_array(cls, n: int, edges: np.ndarray) -> "Graph":
        """Like :meth:`from_edges` for an ``(m, 2)`` integer array."""
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        u, v = edges[:, 0], edges[:, 1]
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if edges.size and (min(u.min(), v.min()) < 1 or max(u.max(), v.max()) > n):
            raise ValueError(f"edge out of range 1..{n}")
        if (u == v).any():
            raise ValueError(f"self-loop at vertex {int(u[u == v][0])}")
        if n == 0:
            return cls._trusted(0, ())
        src = np.concatenate((u, v))
        dst = np.concatenate((v, u))
        dst = dst[np.argsort(src, kind="stable")]
        bounds = np.cumsum(np.bincount(src, minlength=n + 1)[1:])[:-1]
        return cls._trusted(n, tuple(frozenset(row) for row in map(np.ndarray.tolist, np.split(dst, bounds))))

    @classmethod
    def _trusted(cls, n: int, adj: tuple[frozenset[int], ...]) -> "Graph":
        # adjacency that is symmetric and in range by construction
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(frozenset() for _ in range(n)))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v - 1]

    def degree(self, v: int) -> int:
        return len(self.adj[v - 1])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u - 1]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, in lexicographic order."""
        for u in self.vertices:
            for v in sorted(self.adj[u - 1]):
                if u < v:
                    yield (u, v)

    @cached_property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    @cached_property
    def max_degree(self) -> int:
        return max((len(s) for s in self.adj), default=0)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """0-based CSR arrays (indptr, indices) with sorted neighbour rows."""
        deg = np.fromiter(map(len, self.adj), dtype=np.int64, count=self.n)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        flat = np.fromiter(chain.from_iterable(self.adj), dtype=np.int64, count=int(indptr[-1])) - 1
        rows = np.repeat(np.arange(self.n, dtype=np.int64), deg)
        indices = flat[np.lexsort((flat, rows))]
        return indptr, indices

    def subgraph_without(self, removed: Iterable[int]) -> dict[int, set[int]]:
        """Adjacency dict of the graph induced on V minus ``removed``."""
        gone = set(removed)
        return {
            v: {u for u in self.adj[v - 1] if u not in gone}
            for v in self.vertices
            if v not in gone
        }

    def relabel(self, perm: dict[int, int]) -> "Graph":
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def complement(g: Graph) -> Graph:
    full = frozenset(g.vertices)
    return Graph(g.n, tuple(full - s - {i + 1} for i, s in enumerate(g.adj)))


class GraphStats(NamedTuple):
    n: int
    m: int
    max_degree: int
    clique_number: int
    degeneracy: int


def degeneracy(g: Graph) -> int:
    deg = [len(s) for s in g.adj]
    if not deg:
        return 0
    buckets: list[set[int]] = [set() for _ in range(max(deg) + 1)]
    for i, d in enumerate(deg):
        buckets[d].add(i)
    removed = [False] * g.n
    best = 0
    d = 0
    for _ in range(g.n):
        d = max(d - 1, 0)
        while not buckets[d]:
            d += 1
        i = buckets[d].pop()
        removed[i] = True
        best = max(best, d)
        for u in g.adj[i]:
            j = u - 1
            if not removed[j]:
                buckets[deg[j]].discard(j)
                deg[j] -= 1
                buckets[deg[j]].add(j)
    return best


def max_clique(g: Graph, node_budget: int = CLIQUE_NODE_BUDGET) -> frozenset[int]:
    """Maximum clique by branch and bound with a greedy-colouring bound.

    Raises LimitError once more than ``node_budget`` search nodes are expanded.
    """
    n = g.n
    if n == 0:
        return frozenset()
    nbr = [0] * n
    for i, s in enumerate(g.adj):
        mask = 0
        for u in s:
            mask |= 1 << (u - 1)
        nbr[i] = mask

    best: list[int] = []
    expanded = 0

    def colour_sort(cand: int) -> tuple[list[int], list[int]]:
        # greedy sequential colouring; returns vertices with their colour bounds
        order, bounds = [], []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~low & ~nbr[v]
                rest &= ~low
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def expand(clique: list[int], cand: int) -> None:
        nonlocal best, expanded
        expanded += 1
        if expanded > node_budget:
            raise LimitError(f"clique search exceeded {node_budget} nodes")
        order, bounds = colour_sort(cand)
        for idx in range(len(order) - 1, -1, -1):
            if len(clique) + bounds[idx] <= len(best):
                return
            v = order[idx]
            clique.append(v)
            new = cand & nbr[v]
            if new:
                expand(clique, new)
            elif len(clique) > len(best):
                best = clique.copy()
            clique.pop()
            cand &= ~(1 << v)

    expand([], (1 << n) - 1)
    return frozenset(v + 1 for v in best)


def clique_number(g: Graph, node_budget: int = CLIQUE_NODE_BUDGET) -> int:
    return len(max_clique(g, node_budget))


def graph_stats(g: Graph, node_budget: int = CLIQUE_NODE_BUDGET) -> GraphStats:
    return GraphStats(
        n=g.n,
        m=g.m,
        max_degree=g.max_degree,
        clique_number=clique_number(g, node_budget),
        degeneracy=degeneracy(g),
    )


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return all(g.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])


def connected_components(adj: dict[int, set[int]] | Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest member."""
    if isinstance(adj, Graph):
        adj = {v: adj.neighbors(v) for v in adj.vertices}
    seen: set[int] = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        seen.add(s)
        stack, comp = [s], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps
