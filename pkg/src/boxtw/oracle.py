"""Independent ground truth for small graphs: interval recognition and
boxicity by exhaustive search.

Boxicity convention: graphs that are interval graphs (including complete
graphs and single vertices) are reported with value 1 and a one-dimensional
witness. The value 0 is never reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .boxrep import BoxRepresentation, IntervalRealization, verify_box_representation
from .classes import chordless_cycle, lexbfs
from .errors import LimitError
from .graph import Graph

INTERVAL_LIMIT = 10
EXACT_BOXICITY_LIMIT = 5
UPPER_SEARCH_N_LIMIT = 8
UPPER_SEARCH_B_LIMIT = 4


class IntervalCheck(NamedTuple):
    is_interval: bool
    realization: IntervalRealization | None
    hole: tuple[int, ...] | None
    reason: str


@dataclass(frozen=True)
class BoxicityCertificate:
    kind: str  # "exact", "lower_bound" or "upper_bound"
    value: int
    witness: BoxRepresentation | None = None


def _maximal_cliques_chordal(g: Graph) -> list[frozenset[int]]:
    order = lexbfs(g)[::-1]
    pos = {v: i for i, v in enumerate(order)}
    cands = {frozenset({v} | {u for u in g.neighbors(v) if pos[u] > pos[v]}) for v in order}
    return sorted((c for c in cands if not any(c < d for d in cands)), key=lambda c: sorted(c))


def _consecutive_arrangement(cliques: list[frozenset[int]]) -> list[int] | None:
    """Order the cliques so that each vertex's cliques are consecutive."""
    k = len(cliques)
    state: dict[int, int] = {}  # 1 = open in the last clique, 2 = closed
    used = [False] * k
    seq: list[int] = []

    def place(i: int) -> list[tuple[int, int | None]] | None:
        c = cliques[i]
        if any(state.get(v) == 2 for v in c):
            return None
        undo = []
        last = cliques[seq[-1]] if seq else frozenset()
        for v in last - c:
            undo.append((v, state.get(v)))
            state[v] = 2
        for v in c:
            undo.append((v, state.get(v)))
            state[v] = 1
        return undo

    def rec() -> bool:
        if len(seq) == k:
            return True
        for i in range(k):
            if used[i]:
                continue
            undo = place(i)
            if undo is None:
                continue
            used[i] = True
            seq.append(i)
            if rec():
                return True
            seq.pop()
            used[i] = False
            for v, old in reversed(undo):
                if old is None:
                    del state[v]
                else:
                    state[v] = old
        return False

    return list(seq) if rec() else None


def is_interval_graph(g: Graph, limit: int = INTERVAL_LIMIT) -> IntervalCheck:
    """Chordality check, then a search for a consecutive ordering of the
    maximal cliques; a found ordering is turned into intervals."""
    if g.n > limit:
        raise LimitError(f"interval recognition limited to n <= {limit}, got n={g.n}")
    hole = chordless_cycle(g)
    if hole is not None:
        return IntervalCheck(False, None, hole, f"chordless cycle {hole}")
    cliques = _maximal_cliques_chordal(g)
    arrangement = _consecutive_arrangement(cliques)
    if arrangement is None:
        return IntervalCheck(False, None, None, "no consecutive arrangement of maximal cliques")
    left = np.zeros(g.n, dtype=np.int64)
    right = np.zeros(g.n, dtype=np.int64)
    seen = set()
    for idx, ci in enumerate(arrangement):
        for v in cliques[ci]:
            if v not in seen:
                seen.add(v)
                left[v - 1] = idx
            right[v - 1] = idx
    ir = IntervalRealization(left, right, "interval")
    if ir.graph() != g:
        raise AssertionError("clique arrangement does not realise the graph")
    return IntervalCheck(True, ir, None, "consecutive clique arrangement")


def _non_edges(g: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u in g.vertices for v in range(u + 1, g.n + 1) if not g.has_edge(u, v)]


def _box_from(realizations: list[IntervalRealization], n: int, d: int) -> BoxRepresentation:
    dims = list(realizations)
    while len(dims) < d:
        dims.append(IntervalRealization(np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64)))
    return BoxRepresentation.from_realizations(dims)


def boxicity_exact_tiny(g: Graph) -> BoxicityCertificate:
    """Exact boxicity for n <= 5 by set cover over interval supergraphs.

    Every interval supergraph of ``g`` is enumerated (one per subset of
    non-edges added back) and recognised; the answer is the fewest such
    supergraphs whose missing non-edges together cover all non-edges.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    if g.n > EXACT_BOXICITY_LIMIT:
        raise LimitError(f"exact boxicity limited to n <= {EXACT_BOXICITY_LIMIT}, got n={g.n}")
    base = is_interval_graph(g)
    if base.is_interval:
        return BoxicityCertificate("exact", 1, BoxRepresentation.from_realizations([base.realization]))
    ne = _non_edges(g)
    q = len(ne)
    edges = list(g.edges())
    candidates: list[tuple[int, IntervalRealization]] = []  # (mask of separated non-edges, realisation)
    for added in range(1 << q):
        extra = [ne[i] for i in range(q) if added >> i & 1]
        h = Graph.from_edges(g.n, edges + extra)
        chk = is_interval_graph(h)
        if chk.is_interval:
            candidates.append(((~added) & ((1 << q) - 1), chk.realization))
    masks = [m for m, _ in candidates]
    maximal = [
        (m, r) for m, r in candidates
        if not any(o != m and (o | m) == o for o in masks)
    ]
    full = (1 << q) - 1
    for k in range(2, q + 1):
        for combo in combinations(maximal, k):
            acc = 0
            for m, _ in combo:
                acc |= m
            if acc == full:
                witness = BoxRepresentation.from_realizations([r for _, r in combo])
                if not verify_box_representation(g, witness).ok:
                    raise AssertionError("set-cover witness failed verification")
                return BoxicityCertificate("exact", k, witness)
    raise AssertionError("no cover found; every non-edge is missing from some interval supergraph")


def _sandwich_order(n: int, required: set[tuple[int, int]], forbidden: frozenset[tuple[int, int]], budget: list[int]) -> list[int] | None:
    """Left-endpoint order of an interval graph containing ``required`` and
    avoiding ``forbidden`` (pairs are 0-based, u < v), or None.

    With left endpoints in the given order, such intervals exist iff for
    every u, each required partner placed after u precedes each forbidden
    partner placed after u. ``budget[0]`` is decremented per placement.
    """
    req = [set() for _ in range(n)]
    forb = [set() for _ in range(n)]
    for u, v in required:
        req[u].add(v)
        req[v].add(u)
    for u, v in forbidden:
        forb[u].add(v)
        forb[v].add(u)
    placed: list[int] = []
    in_seq = [False] * n
    closed = [0] * n  # number of forbidden partners placed after u

    def rec() -> bool:
        if len(placed) == n:
            return True
        for w in range(n):
            if in_seq[w]:
                continue
            if any(closed[u] and in_seq[u] for u in req[w]):
                continue
            budget[0] -= 1
            if budget[0] < 0:
                return False
            in_seq[w] = True
            placed.append(w)
            for u in forb[w]:
                if in_seq[u] and u != w:
                    closed[u] += 1
            if rec():
                return True
            for u in forb[w]:
                if in_seq[u] and u != w:
                    closed[u] -= 1
            placed.pop()
            in_seq[w] = False
        return False

    return list(placed) if rec() else None


def _realize_order(n: int, order: list[int], forbidden: frozenset[tuple[int, int]]) -> IntervalRealization:
    if not forbidden:
        return IntervalRealization(np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64))
    pos = {v: i for i, v in enumerate(order)}
    left = np.array([2 * pos[v] for v in range(n)], dtype=np.int64)
    right = np.full(n, 2 * n, dtype=np.int64)
    for u, v in forbidden:
        a, b = (u, v) if pos[u] < pos[v] else (v, u)
        right[a] = min(right[a], 2 * pos[b] - 1)
    return IntervalRealization(left, right)


def boxicity_upper_search(g: Graph, b: int, budget: int = 200_000) -> BoxRepresentation | None:
    """Search for a verified ``b``-dimensional box representation.

    Non-edges are assigned to dimensions by backtracking; a dimension is
    feasible when some interval graph contains every edge and avoids the
    non-edges assigned to it. None means nothing was found within budget.
    """
    if g.n > UPPER_SEARCH_N_LIMIT or b > UPPER_SEARCH_B_LIMIT:
        raise LimitError(
            f"upper search limited to n <= {UPPER_SEARCH_N_LIMIT}, b <= {UPPER_SEARCH_B_LIMIT}"
        )
    if b < 1 or g.n == 0:
        raise ValueError("need b >= 1 and a non-empty graph")
    n = g.n
    required = {(u - 1, v - 1) for u, v in g.edges()}
    ne = [(u - 1, v - 1) for u, v in _non_edges(g)]
    left = [budget]
    cache: dict[frozenset, list[int] | None] = {}

    def feasible(forb: frozenset) -> list[int] | None:
        if forb not in cache:
            if left[0] < 0:
                return None
            cache[forb] = _sandwich_order(n, required, forb, left)
        return cache[forb]

    groups: list[set] = [set() for _ in range(b)]

    def rec(i: int) -> bool:
        if left[0] < 0:
            return False
        if i == len(ne):
            return True
        opened = sum(1 for grp in groups if grp)
        for j in range(min(opened + 1, b)):
            groups[j].add(ne[i])
            if feasible(frozenset(groups[j])) is not None and rec(i + 1):
                return True
            groups[j].discard(ne[i])
        return False

    if not rec(0):
        return None
    dims = []
    for grp in groups:
        forb = frozenset(grp)
        dims.append(_realize_order(n, feasible(forb), forb))
    witness = _box_from(dims, n, b)
    if not verify_box_representation(g, witness).ok:
        raise AssertionError("upper-search witness failed verification")
    return witness
