"""Decompositions for special graph classes: chordal graphs (clique trees),
circular-arc graphs, co-comparability graphs and caterpillar-covered graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import PreconditionError
from .graph import Graph
from .treedec import TreeDecomposition, td_from_elimination_order


@dataclass(frozen=True)
class EliminationOrder:
    order: tuple[int, ...]

    def positions(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


def lexbfs(g: Graph) -> list[int]:
    """Lexicographic BFS visiting order; ties go to the smallest vertex id."""
    labels: dict[int, list[int]] = {v: [] for v in g.vertices}
    unvisited = set(g.vertices)
    order = []
    for i in range(g.n, 0, -1):
        v = max(unvisited, key=lambda u: (labels[u], -u))
        order.append(v)
        unvisited.remove(v)
        for u in g.neighbors(v):
            if u in unvisited:
                labels[u].append(i)
    return order


def peo_violation(g: Graph, order: Sequence[int]) -> tuple[int, int, int] | None:
    """First ``(v, p, w)`` where v's later neighbours p, w are non-adjacent.

    p is v's earliest later neighbour; checking only against p suffices.
    """
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in g.neighbors(v) if pos[u] > pos[v]]
        if len(later) < 2:
            continue
        p = min(later, key=pos.__getitem__)
        np_ = g.neighbors(p)
        for w in sorted(later):
            if w != p and w not in np_:
                return (v, p, w)
    return None


def _canonical_cycle(cycle: list[int]) -> tuple[int, ...]:
    k = cycle.index(min(cycle))
    rot = cycle[k:] + cycle[:k]
    if len(rot) > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


def chordless_cycle(g: Graph) -> tuple[int, ...] | None:
    """A chordless cycle of length >= 4, or None if the graph is chordal.

    For every vertex v and non-adjacent neighbours x, w, a shortest x-w path
    avoiding the rest of N[v] closes an induced cycle through v. Every hole
    arises this way, so the search is complete. The shortest witness found
    is returned, in canonical rotation.
    """
    best = None
    for v in g.vertices:
        nv = g.neighbors(v)
        nbrs = sorted(nv)
        for i, x in enumerate(nbrs):
            for w in nbrs[i + 1:]:
                if g.has_edge(x, w):
                    continue
                blocked = (nv | {v}) - {x, w}
                prev = {x: None}
                queue = deque([x])
                while queue and w not in prev:
                    a = queue.popleft()
                    for b in sorted(g.neighbors(a)):
                        if b not in prev and b not in blocked:
                            prev[b] = a
                            queue.append(b)
                if w not in prev:
                    continue
                path = []
                c = w
                while c is not None:
                    path.append(c)
                    c = prev[c]
                cyc = [v] + path[::-1]
                if best is None or len(cyc) < len(best):
                    best = cyc
                    if len(best) == 4:
                        return _canonical_cycle(best)
    return None if best is None else _canonical_cycle(best)


def lexbfs_peo(g: Graph) -> tuple[EliminationOrder | None, tuple[int, ...] | None]:
    """``(peo, None)`` for chordal graphs, ``(None, hole)`` otherwise."""
    order = lexbfs(g)[::-1]
    if peo_violation(g, order) is None:
        return EliminationOrder(tuple(order)), None
    cycle = chordless_cycle(g)
    if cycle is None:
        raise AssertionError("PEO check failed but no chordless cycle exists")
    return None, cycle


def clique_tree_decomposition(g: Graph, peo: EliminationOrder) -> TreeDecomposition:
    """Bags ``{v} + later neighbours``, each hung below its earliest later neighbour."""
    if sorted(peo.order) != list(g.vertices):
        raise PreconditionError("order is not a permutation of the vertices", None)
    bad = peo_violation(g, peo.order)
    if bad is not None:
        raise PreconditionError(f"not a perfect elimination order: {bad[1]} and {bad[2]} are later non-adjacent neighbours of {bad[0]}", bad)
    return td_from_elimination_order(g, list(peo.order))


# -- circular arcs ------------------------------------------------------------

@dataclass(frozen=True)
class ArcFamily:
    """Arcs on a circle of ``m`` points; ``(start, end)`` runs clockwise and
    wraps past ``m - 1`` when ``end < start``. Vertices are 1..n."""

    m: int
    arcs: Mapping[int, tuple[int, int]]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("circle needs at least one point")
        if sorted(self.arcs) != list(range(1, len(self.arcs) + 1)):
            raise ValueError("arc vertices must be 1..n")
        for v, (s, e) in self.arcs.items():
            if not (0 <= s < self.m and 0 <= e < self.m):
                raise ValueError(f"arc {v} has a position outside 0..{self.m - 1}")

    @property
    def n(self) -> int:
        return len(self.arcs)

    def contains(self, v: int, p: int) -> bool:
        s, e = self.arcs[v]
        return s <= p <= e if s <= e else (p >= s or p <= e)

    def positions(self, v: int) -> frozenset[int]:
        s, e = self.arcs[v]
        if s <= e:
            return frozenset(range(s, e + 1))
        return frozenset(range(s, self.m)) | frozenset(range(0, e + 1))

    def endpoints(self) -> list[int]:
        return sorted({p for se in self.arcs.values() for p in se})


def arc_intersection_graph(arcs: ArcFamily) -> Graph:
    masks = {}
    for v in arcs.arcs:
        mask = 0
        for p in arcs.positions(v):
            mask |= 1 << p
        masks[v] = mask
    edges = [
        (u, v)
        for u in range(1, arcs.n + 1)
        for v in range(u + 1, arcs.n + 1)
        if masks[u] & masks[v]
    ]
    return Graph.from_edges(arcs.n, edges)


def _path_td(bags: list[frozenset[int]], n: int) -> TreeDecomposition:
    collapsed: list[frozenset[int]] = []
    for b in bags:
        if not collapsed or collapsed[-1] != b:
            collapsed.append(b)
    return TreeDecomposition.build(
        {i + 1: b for i, b in enumerate(collapsed)},
        [(i, i + 1) for i in range(1, len(collapsed))],
        n,
    )


def circular_arc_path_decomposition(arcs: ArcFamily) -> TreeDecomposition:
    """Path of bags ``X_i + X_0`` over the sorted arc endpoints p_0 < ... < p_k,
    where ``X_i`` are the arcs through ``p_i``."""
    if arcs.n == 0:
        raise ValueError("empty arc family")
    pts = arcs.endpoints()
    through = [frozenset(v for v in arcs.arcs if arcs.contains(v, p)) for p in pts]
    x0 = through[0]
    bags = [x0] if len(pts) == 1 else [x | x0 for x in through[1:]]
    return _path_td(bags, arcs.n)


# -- co-comparability orders --------------------------------------------------

@dataclass(frozen=True)
class LinearOrder:
    """Bijection ``f`` from vertices 1..n onto positions 1..n."""

    f: Mapping[int, int]

    def __post_init__(self):
        n = len(self.f)
        if sorted(self.f) != list(range(1, n + 1)) or sorted(self.f.values()) != list(range(1, n + 1)):
            raise ValueError("linear order must be a bijection onto 1..n")

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "LinearOrder":
        return cls({v: i + 1 for i, v in enumerate(seq)})

    @classmethod
    def identity(cls, n: int) -> "LinearOrder":
        return cls({v: v for v in range(1, n + 1)})

    @property
    def sequence(self) -> list[int]:
        return sorted(self.f, key=self.f.__getitem__)


def check_cocomparability_order(g: Graph, f: LinearOrder):
    """None if ``f`` has both properties, else ``(kind, witness)``."""
    delta = g.max_degree
    bound = 2 * delta - 1
    for u, v in g.edges():
        if abs(f.f[u] - f.f[v]) > bound:
            return "stretch", (u, v)
    seq = f.sequence
    for u, v in g.edges():
        a, b = sorted((u, v), key=f.f.__getitem__)
        for w in seq[f.f[a]:f.f[b] - 1]:
            if not g.has_edge(w, a) and not g.has_edge(w, b):
                return "umbrella", (a, w, b)
    return None


def cocomparability_path_decomposition(g: Graph, f: LinearOrder) -> TreeDecomposition:
    """Sliding windows of ``2*maxdeg`` consecutive positions of ``f``."""
    if g.n == 0:
        raise ValueError("empty graph")
    if len(f.f) != g.n:
        raise PreconditionError("order and graph differ in vertex count", None)
    bad = check_cocomparability_order(g, f)
    if bad is not None:
        kind, witness = bad
        if kind == "stretch":
            raise PreconditionError(f"edge {witness} stretches beyond 2*maxdeg-1 positions", witness)
        raise PreconditionError(f"{witness[1]} lies between adjacent {witness[0]} and {witness[2]} but sees neither", witness)
    window = max(2 * g.max_degree, 1)
    seq = f.sequence
    starts = range(max(1, g.n - window + 1))
    bags = [frozenset(seq[i:i + window]) for i in starts]
    return _path_td(bags, g.n)


def permutation_cocomp_order(pi: Sequence[int]) -> tuple[Graph, LinearOrder]:
    """Permutation graph of ``pi`` (``pi[k-1]`` is pi(k)) and the identity order.

    i and j are adjacent iff their order disagrees with the order of their
    positions in ``pi``.
    """
    n = len(pi)
    if sorted(pi) != list(range(1, n + 1)):
        raise ValueError("pi must be a permutation of 1..n")
    inv = [0] * (n + 1)
    for k, x in enumerate(pi, start=1):
        inv[x] = k
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if inv[i] > inv[j]]
    return Graph.from_edges(n, edges), LinearOrder.identity(n)


# -- caterpillars -------------------------------------------------------------

@dataclass(frozen=True)
class Caterpillar:
    spine: tuple[int, ...]
    leaves: Mapping[int, frozenset[int]]

    def __post_init__(self):
        if not self.spine:
            raise ValueError("caterpillar needs a non-empty spine")
        if len(set(self.spine)) != len(self.spine):
            raise ValueError("repeated spine vertex")
        if set(self.leaves) - set(self.spine):
            raise ValueError("leaves attached to a non-spine vertex")
        seen = set(self.spine)
        for p in self.spine:
            for x in self.leaves.get(p, ()):
                if x in seen:
                    raise ValueError(f"vertex {x} appears twice in the caterpillar")
                seen.add(x)

    def groups(self) -> list[frozenset[int]]:
        return [frozenset({p}) | frozenset(self.leaves.get(p, ())) for p in self.spine]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.groups())

    def edges(self) -> list[tuple[int, int]]:
        out = [tuple(sorted(e)) for e in zip(self.spine, self.spine[1:])]
        for p in self.spine:
            out.extend(tuple(sorted((p, x))) for x in self.leaves.get(p, ()))
        return sorted(out)


def caterpillar_path_decomposition(cat: Caterpillar, g: Graph) -> TreeDecomposition:
    """Bags of three consecutive spine groups (spine vertex plus its leaves)."""
    if cat.vertices != frozenset(g.vertices):
        raise PreconditionError("caterpillar does not span the graph's vertices", None)
    groups = cat.groups()
    where = {v: i for i, grp in enumerate(groups) for v in grp}
    for u, v in g.edges():
        if abs(where[u] - where[v]) > 2:
            raise PreconditionError(
                f"edge ({u}, {v}) spans spine groups {where[u]} and {where[v]}", (u, v)
            )
    if len(groups) <= 3:
        bags = [frozenset().union(*groups)]
    else:
        bags = [groups[i] | groups[i + 1] | groups[i + 2] for i in range(len(groups) - 2)]
    return _path_td(bags, g.n)
