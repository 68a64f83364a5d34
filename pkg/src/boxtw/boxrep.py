"""Box representations of dimension width + 2 built from a tree decomposition.

Pipeline: normalise the decomposition, colour vertices so every bag is
rainbow (``theta_coloring``), build one interval supergraph per colour, add
the interval graph of depth-first first/last numbers, and stack them as the
coordinates of the boxes. All endpoints are integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .graph import Graph
from .treedec import NormalizedTreeDecomposition, TreeDecomposition, normalize, validate_td
from .errors import InvalidDecompositionError


@dataclass(frozen=True)
class ThetaColoring:
    theta: dict[int, int]
    width: int

    def __getitem__(self, v: int) -> int:
        return self.theta[v]

    def as_array(self, n: int) -> np.ndarray:
        """0-based int64 array, ``arr[v - 1] = theta(v)``."""
        return np.fromiter((self.theta[v] for v in range(1, n + 1)), dtype=np.int64, count=n)

    def color_class(self, i: int) -> frozenset[int]:
        return frozenset(v for v, c in self.theta.items() if c == i)


@dataclass(frozen=True)
class IntervalRealization:
    """Closed integer intervals ``[left[v-1], right[v-1]]`` for vertices 1..n."""

    left: np.ndarray
    right: np.ndarray
    label: str = ""

    def __post_init__(self):
        if self.left.shape != self.right.shape:
            raise ValueError("left/right endpoint arrays differ in shape")
        if np.any(self.left > self.right):
            v = int(np.argmax(self.left > self.right)) + 1
            raise ValueError(f"interval of vertex {v} has left > right")

    @property
    def n(self) -> int:
        return int(self.left.shape[0])

    def __getitem__(self, v: int) -> tuple[int, int]:
        return int(self.left[v - 1]), int(self.right[v - 1])

    @property
    def intervals(self) -> dict[int, tuple[int, int]]:
        return {v: self[v] for v in range(1, self.n + 1)}

    def intersects(self, u: int, v: int) -> bool:
        return max(self.left[u - 1], self.left[v - 1]) <= min(self.right[u - 1], self.right[v - 1])

    def graph(self) -> Graph:
        """The interval graph itself (quadratic; meant for small n)."""
        edges = [
            (u, v)
            for u in range(1, self.n + 1)
            for v in range(u + 1, self.n + 1)
            if self.intersects(u, v)
        ]
        return Graph.from_edges(self.n, edges)


@dataclass(frozen=True)
class BoxRepresentation:
    """``lo[v-1, j], hi[v-1, j]`` bound vertex v's box in dimension j."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        if self.lo.ndim != 2 or self.lo.shape != self.hi.shape:
            raise ValueError("lo/hi must be matching (n, d) arrays")
        if self.lo.shape[1] < 1:
            raise ValueError("a box representation needs d >= 1")
        if np.any(self.lo > self.hi):
            raise ValueError("some interval has left > right")

    @classmethod
    def from_realizations(cls, dims: Sequence[IntervalRealization]) -> "BoxRepresentation":
        lo = np.column_stack([r.left for r in dims]).astype(np.int64)
        hi = np.column_stack([r.right for r in dims]).astype(np.int64)
        return cls(lo, hi)

    @property
    def n(self) -> int:
        return int(self.lo.shape[0])

    @property
    def d(self) -> int:
        return int(self.lo.shape[1])

    def box(self, v: int) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in zip(self.lo[v - 1], self.hi[v - 1])]

    @property
    def boxes(self) -> dict[int, list[tuple[int, int]]]:
        return {v: self.box(v) for v in range(1, self.n + 1)}

    def dimension(self, j: int, label: str = "") -> IntervalRealization:
        return IntervalRealization(self.lo[:, j].copy(), self.hi[:, j].copy(), label)

    def realizations(self) -> Iterator[IntervalRealization]:
        for j in range(self.d):
            yield self.dimension(j, f"dim{j}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoxRepresentation):
            return NotImplemented
        return np.array_equal(self.lo, other.lo) and np.array_equal(self.hi, other.hi)


@dataclass
class VerificationReport:
    missing: list[tuple[int, int]] = field(default_factory=list)
    extra: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra

    def __bool__(self) -> bool:
        return self.ok


def theta_coloring(ntd: NormalizedTreeDecomposition) -> ThetaColoring:
    """Colour vertices with 0..width so that every bag is rainbow.

    Nodes are visited by (height, id); each node's introduced vertex takes the
    smallest colour not used by the rest of its bag, which is already coloured.
    """
    width = ntd.width
    theta: dict[int, int] = {}
    inv = ntd.b_inverse
    for node in sorted(ntd.bags, key=lambda i: (ntd.height[i], i)):
        u = inv[node]
        used = {theta[w] for w in ntd.bags[node] if w != u}
        c = 0
        while c in used:
            c += 1
        if c > width:
            raise AssertionError(f"colour {c} exceeds width {width} at node {node}")
        theta[u] = c
    return ThetaColoring(theta, width)


def _heights(ntd: NormalizedTreeDecomposition, n: int) -> np.ndarray:
    return np.fromiter((ntd.h_map[v] for v in range(1, n + 1)), dtype=np.int64, count=n)


def _color_dimensions(g: Graph, ntd: NormalizedTreeDecomposition, theta: ThetaColoring):
    """Endpoint arrays ``(left, right)`` of shape (n, width+1), one column per colour."""
    n = g.n
    ncolors = ntd.width + 1
    h = _heights(ntd, n)
    if n and 2 * int(h.max()) + 1 >= 3 * n:
        raise AssertionError("colour endpoints collide with the 3n sentinel")
    th = theta.as_array(n)
    indptr, indices = g.csr
    minr = _kernels.color_min_right(indptr, indices, th, h, ncolors)
    sentinel = 3 * n
    own = th[:, None] == np.arange(ncolors)[None, :]
    left = np.where(minr == _kernels.INF, sentinel, minr)
    right = np.full((n, ncolors), sentinel, dtype=np.int64)
    left = np.where(own, (2 * h)[:, None], left)
    right = np.where(own, (2 * h + 1)[:, None], right)
    return left, right


def build_color_interval_graph(
    g: Graph, ntd: NormalizedTreeDecomposition, theta: ThetaColoring, i: int
) -> IntervalRealization:
    """Interval supergraph for colour ``i``.

    Colour-i vertices get ``[2h(v), 2h(v)+1]``. Any other vertex with no
    colour-i neighbour gets ``[3n, 3n]``; otherwise ``[m, 3n]`` where m is the
    smallest right endpoint among its colour-i neighbours.
    """
    if not 0 <= i <= ntd.width:
        raise ValueError(f"colour {i} outside 0..{ntd.width}")
    left, right = _color_dimensions(g, ntd, theta)
    return IntervalRealization(left[:, i].copy(), right[:, i].copy(), f"color{i}")


def _child_csr(ntd: NormalizedTreeDecomposition) -> tuple[np.ndarray, np.ndarray]:
    # tree node ids are 1..N; 0-based arrays
    N = len(ntd.bags)
    ch = ntd.children
    ptr = np.zeros(N + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(ch[i]) for i in range(1, N + 1)])
    idx = np.fromiter((c - 1 for i in range(1, N + 1) for c in ch[i]), dtype=np.int64, count=int(ptr[-1]))
    return ptr, idx


def dfs_numbering(ntd: NormalizedTreeDecomposition) -> tuple[dict[int, int], dict[int, int]]:
    """first/last positions (1-based) of each node in the doubled DFS list.

    A leaf contributes ``<i, i>``; an inner node wraps its children's lists,
    visited in ascending id order, between two copies of itself.
    """
    first, last = _dfs_arrays(ntd)
    return (
        {i + 1: int(x) for i, x in enumerate(first)},
        {i + 1: int(x) for i, x in enumerate(last)},
    )


def _dfs_arrays(ntd: NormalizedTreeDecomposition) -> tuple[np.ndarray, np.ndarray]:
    if sorted(ntd.bags) != list(range(1, len(ntd.bags) + 1)):
        raise ValueError("dfs numbering expects tree node ids 1..N")
    ptr, idx = _child_csr(ntd)
    return _kernels.dfs_first_last(ptr, idx, ntd.root - 1)


def build_dfs_interval_graph(ntd: NormalizedTreeDecomposition) -> IntervalRealization:
    first, last = _dfs_arrays(ntd)
    n = len(ntd.b_map)
    b = np.fromiter((ntd.b_map[v] - 1 for v in range(1, n + 1)), dtype=np.int64, count=n)
    return IntervalRealization(first[b], last[b], "dfs")


def build_box_representation(
    g: Graph, td: TreeDecomposition, *, validate: bool = True
) -> BoxRepresentation:
    """Boxes of dimension ``td.width + 2`` whose intersection graph is ``g``.

    Dimensions 0..width hold the colour interval graphs, the last one the
    depth-first interval graph. An already normalised decomposition is used
    as given (after validation).
    """
    if g.n == 0:
        raise ValueError("empty graph")
    if isinstance(td, NormalizedTreeDecomposition):
        if validate:
            report = validate_td(g, td)
            if not report.ok:
                raise InvalidDecompositionError("; ".join(report.lines()[:-1]), report)
        ntd = td
    else:
        ntd = normalize(g, td)
    theta = theta_coloring(ntd)
    left, right = _color_dimensions(g, ntd, theta)
    dfs = build_dfs_interval_graph(ntd)
    lo = np.column_stack([left, dfs.left])
    hi = np.column_stack([right, dfs.right])
    return BoxRepresentation(np.ascontiguousarray(lo), np.ascontiguousarray(hi))


def all_dimensions(g: Graph, ntd: NormalizedTreeDecomposition) -> list[IntervalRealization]:
    """The width+2 interval realisations, colours first, DFS last."""
    theta = theta_coloring(ntd)
    left, right = _color_dimensions(g, ntd, theta)
    dims = [
        IntervalRealization(left[:, i].copy(), right[:, i].copy(), f"color{i}")
        for i in range(left.shape[1])
    ]
    dims.append(build_dfs_interval_graph(ntd))
    return dims


def _pairs_from_rows(rows: np.ndarray) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    missing = [(int(u) + 1, int(v) + 1) for u, v, k in rows if k == 0]
    extra = [(int(u) + 1, int(v) + 1) for u, v, k in rows if k == 1]
    return sorted(missing), sorted(extra)


def _verify_sweep(g: Graph, lo: np.ndarray, hi: np.ndarray) -> VerificationReport:
    n, d = lo.shape
    counts = [_kernels.overlap_pair_count(lo[:, j], hi[:, j]) for j in range(d)]
    j0 = int(np.argmin(counts))
    realized = []
    for a, b in _kernels.overlap_pairs(lo[:, j0], hi[:, j0]):
        hit = np.all(np.maximum(lo[a], lo[b]) <= np.minimum(hi[a], hi[b]), axis=1)
        a, b = a[hit], b[hit]
        realized.append(np.minimum(a, b) * n + np.maximum(a, b))
    realized_keys = np.unique(np.concatenate(realized)) if realized else np.empty(0, dtype=np.int64)
    indptr, indices = g.csr
    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    keep = src < indices
    edge_keys = src[keep] * n + indices[keep]
    miss = np.setdiff1d(edge_keys, realized_keys, assume_unique=True)
    extra = np.setdiff1d(realized_keys, edge_keys, assume_unique=True)
    return VerificationReport(
        missing=[(int(k // n) + 1, int(k % n) + 1) for k in miss],
        extra=[(int(k // n) + 1, int(k % n) + 1) for k in extra],
    )


def verify_box_representation(g: Graph, b: BoxRepresentation, *, sweep: bool = False) -> VerificationReport:
    """Compare the intersection graph of ``b`` with ``g``.

    The default is the exhaustive O(n^2 d) pairwise check. ``sweep=True``
    enumerates only the intersecting pairs of the least-overlapping dimension
    and filters them against the others; it is output-sensitive and meant for
    large sparse instances.
    """
    if b.n != g.n:
        raise ValueError(f"box representation covers {b.n} vertices, graph has {g.n}")
    if sweep:
        return _verify_sweep(g, b.lo, b.hi)
    indptr, indices = g.csr
    rows = _kernels.pairwise_mismatch(
        np.ascontiguousarray(b.lo), np.ascontiguousarray(b.hi), indptr, indices
    )
    missing, extra = _pairs_from_rows(rows)
    return VerificationReport(missing, extra)


def verify_supergraph(g: Graph, ir: IntervalRealization) -> bool:
    """True iff every edge of ``g`` is an intersecting pair in ``ir``."""
    if ir.n != g.n:
        raise ValueError("realisation and graph differ in vertex count")
    indptr, indices = g.csr
    src = np.repeat(np.arange(g.n, dtype=np.int64), np.diff(indptr))
    return bool(np.all(np.maximum(ir.left[src], ir.left[indices]) <= np.minimum(ir.right[src], ir.right[indices])))
