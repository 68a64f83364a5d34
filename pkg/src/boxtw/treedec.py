"""Tree decompositions: validation and normalisation.

A normalised decomposition is rooted at a singleton bag and every child bag
introduces exactly one vertex not present in its parent. That makes the
"shallowest bag containing v" map a bijection between vertices and tree
nodes, which is what the box construction in :mod:`boxtw.boxrep` runs on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import chain
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .errors import InvalidDecompositionError
from .graph import Graph


@dataclass(frozen=True)
class TreeDecomposition:
    bags: Mapping[int, frozenset[int]]
    tree_edges: frozenset[tuple[int, int]]
    target_n: int

    @classmethod
    def build(
        cls,
        bags: Mapping[int, Iterable[int]],
        tree_edges: Iterable[tuple[int, int]],
        target_n: int,
    ) -> "TreeDecomposition":
        return cls(
            {int(i): frozenset(b) for i, b in bags.items()},
            frozenset((min(a, b), max(a, b)) for a, b in tree_edges),
            target_n,
        )

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    @property
    def num_nodes(self) -> int:
        return len(self.bags)

    def tree_adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {i: [] for i in self.bags}
        for a, b in sorted(self.tree_edges):
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        return adj

    def is_path(self) -> bool:
        return all(len(nb) <= 2 for nb in self.tree_adjacency().values())


@dataclass(frozen=True)
class NormalizedTreeDecomposition(TreeDecomposition):
    root: int = 0
    parent: Mapping[int, int | None] = field(default_factory=dict)
    height: Mapping[int, int] = field(default_factory=dict)
    b_map: Mapping[int, int] = field(default_factory=dict)
    h_map: Mapping[int, int] = field(default_factory=dict)

    @cached_property
    def children(self) -> dict[int, list[int]]:
        ch: dict[int, list[int]] = {i: [] for i in self.bags}
        for i, p in self.parent.items():
            if p is not None:
                ch[p].append(i)
        for lst in ch.values():
            lst.sort()
        return ch

    @cached_property
    def b_inverse(self) -> dict[int, int]:
        return {node: v for v, node in self.b_map.items()}

    def is_ancestor(self, i: int, j: int) -> bool:
        """True if i is a proper ancestor of j."""
        if self.height[i] >= self.height[j]:
            return False
        while self.height[j] > self.height[i]:
            j = self.parent[j]
        return i == j


class Violation(NamedTuple):
    kind: str  # "T1", "T2", "T3", "tree" or "range"
    message: str
    witness: object


@dataclass
class ValidationReport:
    violations: list[Violation]
    width: int

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def lines(self) -> list[str]:
        out = [f"{v.kind}: {v.message}" for v in self.violations]
        out.append(f"width={self.width}")
        return out


# above this many within-bag pairs, edge coverage falls back to set lookups
_PAIR_CAP = 20_000_000


def _bag_pair_keys(fv: np.ndarray, sizes: np.ndarray, n: int) -> np.ndarray:
    """Keys ``min*(n+1)+max`` of every vertex pair sharing a bag."""
    offsets = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    keys = []
    for s in np.unique(sizes):
        if s < 2:
            continue
        rows = fv[offsets[sizes == s][:, None] + np.arange(s)]
        iu, ju = np.triu_indices(int(s), 1)
        a, b = rows[:, iu], rows[:, ju]
        keys.append((np.minimum(a, b) * (n + 1) + np.maximum(a, b)).ravel())
    return np.concatenate(keys) if keys else np.empty(0, dtype=np.int64)


def _tree_check(td: TreeDecomposition, nodes: list[int]) -> tuple[list[Violation], np.ndarray | None]:
    """Tree-shape violations, and BFS parent indices (-1 at ``nodes[0]``)
    when the node graph is a tree."""
    if not nodes:
        return [Violation("tree", "decomposition has no nodes", None)], None
    out = []
    edges = sorted(td.tree_edges)
    ids = np.asarray(nodes, dtype=np.int64)
    ends = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    pos = np.minimum(np.searchsorted(ids, ends), len(nodes) - 1)
    known = (ids[pos] == ends).all(axis=1)
    for k in np.flatnonzero((ends[:, 0] == ends[:, 1]) | ~known):
        a, b = edges[k]
        if a == b:
            out.append(Violation("tree", f"self-loop on tree node {a}", (a, b)))
        else:
            out.append(Violation("tree", f"tree edge ({a}, {b}) uses an unknown node", (a, b)))
    if out:
        return out, None
    nbrs: list[list[int]] = [[] for _ in nodes]
    for x, y in pos.tolist():
        nbrs[x].append(y)
        nbrs[y].append(x)
    parent = [-2] * len(nodes)
    parent[0] = -1
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for j in nbrs[k]:
            if parent[j] == -2:
                parent[j] = k
                queue.append(j)
    if -2 in parent:
        missing = nodes[parent.index(-2)]
        out.append(Violation("tree", f"tree is disconnected; node {missing} unreachable from {nodes[0]}", missing))
    elif len(edges) != len(nodes) - 1:
        out.append(Violation("tree", f"{len(edges)} edges on {len(nodes)} nodes: tree has a cycle", None))
    return out, (None if out else np.asarray(parent, dtype=np.int64))


def validate_td(g: Graph, td: TreeDecomposition) -> ValidationReport:
    """Check a decomposition against ``g``; violations carry witnesses."""
    violations: list[Violation] = []
    n = g.n
    if td.target_n != n:
        violations.append(Violation("range", f"decomposition is for n={td.target_n}, graph has n={n}", td.target_n))

    nodes = sorted(td.bags)
    sizes = np.fromiter((len(td.bags[i]) for i in nodes), dtype=np.int64, count=len(nodes))
    flat = np.fromiter(chain.from_iterable(td.bags[i] for i in nodes), dtype=np.int64, count=int(sizes.sum()))
    owner = np.repeat(np.arange(len(nodes), dtype=np.int64), sizes)
    outside = (flat < 1) | (flat > n)
    if outside.any():
        for k in np.unique(owner[outside]):
            bad = int(flat[outside & (owner == k)].min())
            violations.append(Violation("range", f"bag {nodes[k]} holds out-of-range vertex {bad}", (nodes[k], bad)))
    fv, fo = flat[~outside], owner[~outside]

    tree_bad, parent = _tree_check(td, nodes)
    violations.extend(tree_bad)

    present = np.zeros(n + 1, dtype=bool)
    present[fv] = True
    for v in np.flatnonzero(~present[1:]) + 1:
        violations.append(Violation("T1", f"vertex {v} is in no bag", int(v)))

    indptr, indices = g.csr
    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    upper = indices > src
    eu, ev = src[upper] + 1, indices[upper] + 1
    fsizes = np.bincount(fo, minlength=len(nodes))
    if int((fsizes * (fsizes - 1) // 2).sum()) <= _PAIR_CAP:
        covered = np.isin(eu * (n + 1) + ev, _bag_pair_keys(fv, fsizes, n))
    else:
        holders: dict[int, set[int]] = {v: set() for v in g.vertices}
        for v, k in zip(fv.tolist(), fo.tolist()):
            holders[v].add(k)
        covered = np.array([not holders[u].isdisjoint(holders[v]) for u, v in zip(eu.tolist(), ev.tolist())], dtype=bool)
    for u, v in zip(eu[~covered].tolist(), ev[~covered].tolist()):
        violations.append(Violation("T2", f"edge ({u}, {v}) is not covered by any bag", (u, v)))

    if parent is not None:
        # holders of v are connected iff exactly one of them has a parent
        # that does not hold v
        keys = np.sort(fo * (n + 1) + fv)
        pk = parent[fo]
        query = pk * (n + 1) + fv
        pos = np.minimum(np.searchsorted(keys, query), max(keys.size - 1, 0))
        top = (pk < 0) | (keys[pos] != query) if keys.size else np.ones(0, dtype=bool)
        tops = np.bincount(fv[top], minlength=n + 1)
        for v in np.flatnonzero(tops > 1):
            trace = sorted(nodes[k] for k in fo[fv == v].tolist())
            violations.append(
                Violation("T3", f"bags holding vertex {v} are not connected in the tree: {trace}", (int(v), trace))
            )
    return ValidationReport(violations, td.width)


def normalize(g: Graph, td: TreeDecomposition) -> NormalizedTreeDecomposition:
    """Convert a valid decomposition into normalised form of the same width.

    Steps: hang a new singleton root ``{u}`` off the smallest-id node with a
    non-empty bag (``u`` its smallest vertex); contract every child whose bag
    is a subset of its parent's; subdivide each remaining tree edge so each
    step introduces one vertex, in ascending vertex order. Output nodes are
    renumbered 1..n in breadth-first order, children by introduced vertex.
    """
    if g.n == 0:
        raise ValueError("cannot normalise a decomposition of the empty graph")
    report = validate_td(g, td)
    if not report.ok:
        raise InvalidDecompositionError("; ".join(report.lines()[:-1]), report)

    orig = sorted(td.bags)
    start = min(i for i in orig if td.bags[i])
    root_vertex = min(td.bags[start])

    # internal node indices: 0 is the new root, 1.. are the original nodes
    index = {i: k + 1 for k, i in enumerate(orig)}
    bag: list[frozenset[int]] = [frozenset((root_vertex,))] + [td.bags[i] for i in orig]
    children: list[list[int]] = [[] for _ in bag]
    children[0].append(index[start])
    tadj = td.tree_adjacency()
    seen = {start}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for j in tadj[i]:
            if j not in seen:
                seen.add(j)
                children[index[i]].append(index[j])
                queue.append(j)

    # contraction of subsumed bags, top-down; reaches a fixed point in one pass
    stack = [0]
    while stack:
        j = stack.pop()
        kept = []
        pending = list(children[j])
        while pending:
            c = pending.pop()
            if bag[c] <= bag[j]:
                pending.extend(children[c])
                children[c] = []
            else:
                kept.append(c)
        children[j] = kept
        stack.extend(kept)

    # subdivision so each child edge introduces exactly one vertex
    intro: dict[int, int] = {0: root_vertex}
    stack = [0]
    while stack:
        j = stack.pop()
        new_children = []
        for c in children[j]:
            diff = sorted(bag[c] - bag[j])
            common = bag[j] & bag[c]
            prev = None
            for step in range(1, len(diff)):
                k = len(bag)
                bag.append(common | frozenset(diff[:step]))
                children.append([])
                intro[k] = diff[step - 1]
                if prev is None:
                    new_children.append(k)
                else:
                    children[prev].append(k)
                prev = k
            intro[c] = diff[-1]
            if prev is None:
                new_children.append(c)
            else:
                children[prev].append(c)
            stack.append(c)
        children[j] = new_children

    # BFS renumbering: ids 1..N, children ordered by introduced vertex
    new_id: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    height: dict[int, int] = {}
    order = [0]
    new_id[0] = 1
    parent[1] = None
    height[1] = 0
    head = 0
    while head < len(order):
        j = order[head]
        head += 1
        for c in sorted(children[j], key=intro.__getitem__):
            new_id[c] = len(order) + 1
            parent[new_id[c]] = new_id[j]
            height[new_id[c]] = height[new_id[j]] + 1
            order.append(c)

    bags = {new_id[j]: bag[j] for j in order}
    if len(bags) != g.n:
        raise AssertionError(f"normalisation produced {len(bags)} nodes for {g.n} vertices")
    tree_edges = frozenset((parent[i], i) for i in bags if parent[i] is not None)

    # each node introduces exactly one vertex, so that node is b(v)
    b_map = {intro[j]: new_id[j] for j in order}
    h_map = {v: height[b_map[v]] for v in b_map}

    return NormalizedTreeDecomposition(
        bags=bags,
        tree_edges=tree_edges,
        target_n=g.n,
        root=1,
        parent=parent,
        height=height,
        b_map=b_map,
        h_map=h_map,
    )


def check_normalized(g: Graph, ntd: NormalizedTreeDecomposition) -> list[str]:
    """Normalised-form properties that ``validate_td`` does not cover."""
    problems = []
    if len(ntd.bags[ntd.root]) != 1:
        problems.append(f"root bag {ntd.root} has {len(ntd.bags[ntd.root])} vertices")
    for i, p in ntd.parent.items():
        if p is not None and len(ntd.bags[i] - ntd.bags[p]) != 1:
            problems.append(f"child {i} of {p} introduces {len(ntd.bags[i] - ntd.bags[p])} vertices")
    if sorted(ntd.b_map.values()) != sorted(ntd.bags):
        problems.append("b_map is not a bijection onto tree nodes")
    for v in g.vertices:
        bv = ntd.b_map.get(v)
        if bv is None:
            problems.append(f"vertex {v} has no b_map entry")
            continue
        if ntd.h_map[v] != ntd.height[bv]:
            problems.append(f"h_map({v}) != height(b({v}))")
        for i, bag in ntd.bags.items():
            if v in bag and i != bv and not ntd.is_ancestor(bv, i):
                problems.append(f"node {i} holds {v} but is not below b({v})={bv}")
    return problems


def td_from_elimination_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Decomposition induced by eliminating vertices in ``order``.

    Bag of v is v plus its not-yet-eliminated neighbours in the filled graph;
    its parent is the bag of the earliest-eliminated of those neighbours.
    Bags of component roots are chained together. Node id = position + 1.
    """
    if sorted(order) != list(g.vertices):
        raise ValueError("order must be a permutation of the vertices")
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    roots: list[int] = []
    for i, v in enumerate(order):
        later = adj.pop(v)
        bags[i + 1] = frozenset(later | {v})
        for u in later:
            adj[u].discard(v)
            adj[u] |= later - {u}
        if later:
            p = min(later, key=pos.__getitem__)
            edges.append((i + 1, pos[p] + 1))
        else:
            roots.append(i + 1)
    for r in roots[:-1]:
        edges.append((r, roots[-1]))
    return TreeDecomposition.build(bags, edges, g.n)
