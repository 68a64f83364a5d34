"""Hot loops of the box construction and the pairwise verifier.

Each kernel has a numba version (``*_numba``) and a pure-numpy version
(``*_numpy``). The public names dispatch to numba when it is importable and
the environment variable ``BOXTW_PURE_NUMPY`` is not set to a true value.
Both variants are always importable so they can be compared directly.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional extra
    numba = None

_FLAG = os.environ.get("BOXTW_PURE_NUMPY", "").strip().lower()
NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and _FLAG not in ("1", "true", "yes", "on")

INF = np.iinfo(np.int64).max


def _njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# -- minimum right endpoint of same-colour neighbours -----------------------

def _color_min_right_loop(indptr, indices, theta, height, ncolors):
    n = indptr.shape[0] - 1
    out = np.full((n, ncolors), INF, dtype=np.int64)
    for v in range(n):
        for k in range(indptr[v], indptr[v + 1]):
            u = indices[k]
            c = theta[u]
            r = 2 * height[u] + 1
            if r < out[v, c]:
                out[v, c] = r
    return out


color_min_right_numba = _njit(_color_min_right_loop)


def color_min_right_numpy(indptr, indices, theta, height, ncolors):
    """``out[v, c]`` = min of ``2h(u)+1`` over neighbours u of v with colour c."""
    n = indptr.shape[0] - 1
    out = np.full((n, ncolors), INF, dtype=np.int64)
    if indices.size:
        src = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
        np.minimum.at(out, (src, theta[indices]), 2 * height[indices] + 1)
    return out


# -- depth-first first/last numbering ---------------------------------------

def _dfs_first_last_loop(child_ptr, child_idx, root):
    n = child_ptr.shape[0] - 1
    first = np.zeros(n, dtype=np.int64)
    last = np.zeros(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    cursor = np.empty(n, dtype=np.int64)
    top = 0
    stack[0] = root
    cursor[0] = child_ptr[root]
    counter = 1
    first[root] = counter
    while top >= 0:
        v = stack[top]
        k = cursor[top]
        if k < child_ptr[v + 1]:
            cursor[top] = k + 1
            c = child_idx[k]
            counter += 1
            first[c] = counter
            top += 1
            stack[top] = c
            cursor[top] = child_ptr[c]
        else:
            counter += 1
            last[v] = counter
            top -= 1
    return first, last


dfs_first_last_numba = _njit(_dfs_first_last_loop)


def dfs_first_last_numpy(child_ptr, child_idx, root):
    """Sequence numbers of first and last occurrence in the doubled DFS list.

    The tour itself is inherently sequential; this path runs it over plain
    Python ints and lets numpy hold the results.
    """
    ptr = child_ptr.tolist()
    idx = child_idx.tolist()
    n = len(ptr) - 1
    first = [0] * n
    last = [0] * n
    counter = 1
    first[root] = 1
    stack = [(root, ptr[root])]
    while stack:
        v, k = stack[-1]
        if k < ptr[v + 1]:
            stack[-1] = (v, k + 1)
            c = idx[k]
            counter += 1
            first[c] = counter
            stack.append((c, ptr[c]))
        else:
            counter += 1
            last[v] = counter
            stack.pop()
    return np.asarray(first, dtype=np.int64), np.asarray(last, dtype=np.int64)


# -- quadratic pairwise verifier ----------------------------------------------

def _pairwise_mismatch_loop(lo, hi, indptr, indices):
    n, d = lo.shape
    # two passes: count, then fill
    count = 0
    out = np.empty((0, 3), dtype=np.int64)
    for sweep in range(2):
        if sweep == 1:
            out = np.empty((count, 3), dtype=np.int64)
            count = 0
        for u in range(n):
            k = indptr[u]
            end = indptr[u + 1]
            while k < end and indices[k] <= u:
                k += 1
            for v in range(u + 1, n):
                hit = True
                for j in range(d):
                    a = lo[u, j] if lo[u, j] > lo[v, j] else lo[v, j]
                    b = hi[u, j] if hi[u, j] < hi[v, j] else hi[v, j]
                    if a > b:
                        hit = False
                        break
                adjacent = k < end and indices[k] == v
                if adjacent:
                    k += 1
                if hit != adjacent:
                    if sweep == 1:
                        out[count, 0] = u
                        out[count, 1] = v
                        out[count, 2] = 1 if hit else 0
                    count += 1
    return out


pairwise_mismatch_numba = _njit(_pairwise_mismatch_loop)


def pairwise_mismatch_numpy(lo, hi, indptr, indices):
    """Rows ``(u, v, kind)`` with u < v (0-based) where the box intersection
    disagrees with adjacency; kind 0 = edge not realised, 1 = spurious pair."""
    n = lo.shape[0]
    rows = []
    adj_row = np.zeros(n, dtype=bool)
    for u in range(n - 1):
        nb = indices[indptr[u]:indptr[u + 1]]
        adj_row[nb] = True
        hit = np.all(
            np.maximum(lo[u], lo[u + 1:]) <= np.minimum(hi[u], hi[u + 1:]), axis=1
        )
        bad = np.nonzero(hit != adj_row[u + 1:])[0]
        if bad.size:
            vs = bad + u + 1
            rows.append(np.column_stack([np.full(vs.size, u), vs, hit[bad].astype(np.int64)]))
        adj_row[nb] = False
    if not rows:
        return np.empty((0, 3), dtype=np.int64)
    return np.concatenate(rows).astype(np.int64)


if USE_NUMBA:
    color_min_right = color_min_right_numba
    dfs_first_last = dfs_first_last_numba
    pairwise_mismatch = pairwise_mismatch_numba
else:
    color_min_right = color_min_right_numpy
    dfs_first_last = dfs_first_last_numpy
    pairwise_mismatch = pairwise_mismatch_numpy


# -- sweep helpers (numpy only; already vectorised) ---------------------------

def overlap_pair_count(lo: np.ndarray, hi: np.ndarray) -> int:
    """Number of unordered pairs of closed intervals that intersect."""
    n = lo.shape[0]
    disjoint = np.searchsorted(np.sort(hi), lo, side="left").sum()
    return n * (n - 1) // 2 - int(disjoint)


def overlap_pairs(lo: np.ndarray, hi: np.ndarray, chunk: int = 1 << 22):
    """Yield arrays of intersecting pairs ``(a, b)`` of one interval family.

    Intervals are sorted by left endpoint; interval p pairs with every later q
    whose left endpoint is at most p's right endpoint. Output is produced in
    chunks of roughly ``chunk`` pairs to bound memory.
    """
    n = lo.shape[0]
    order = np.lexsort((np.arange(n), lo))
    sl = lo[order]
    sh = hi[order]
    ends = np.searchsorted(sl, sh, side="right")
    counts = np.maximum(ends - np.arange(n) - 1, 0)
    csum = np.cumsum(counts)
    start = 0
    while start < n:
        base = csum[start - 1] if start else 0
        stop = int(np.searchsorted(csum, base + chunk, side="right"))
        stop = min(max(stop, start + 1), n)
        cnt = counts[start:stop]
        total = int(cnt.sum())
        if total:
            pos = np.repeat(np.arange(start, stop), cnt)
            offs = np.arange(total) - np.repeat(np.cumsum(cnt) - cnt, cnt)
            yield order[pos], order[pos + 1 + offs]
        start = stop
