"""Text formats: ``.gr`` graphs, ``.td`` decompositions, box files, arc
families, caterpillars and linear orders.

Every format is line based, whitespace separated, ``c``-prefixed comments.
Emitters produce canonical LF-terminated text; parsers accept str or bytes
and raise :class:`ParseError` naming the offending line.
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .errors import ParseError
from .graph import Graph
from .treedec import NormalizedTreeDecomposition, TreeDecomposition


def _decode(text: str | bytes) -> str:
    if isinstance(text, (bytes, bytearray)):
        try:
            return text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8 text: {exc}") from None
    return text


def _lines(text: str | bytes) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(_decode(text).splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c" or parts[0].startswith("c"):
            continue
        yield no, parts


def _ints(parts: list[str], no: int) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(parts)!r}", no) from None


def _header(parts: list[str], no: int, kind: tuple[str, ...], nfields: int) -> list[int]:
    if tuple(parts[: len(kind)]) != kind or len(parts) != len(kind) + nfields:
        raise ParseError(f"malformed header, expected '{' '.join(kind)}' with {nfields} integers", no)
    vals = _ints(parts[len(kind):], no)
    if any(v < 0 for v in vals):
        raise ParseError("negative value in header", no)
    return vals


# -- .gr ---------------------------------------------------------------------

def _parse_graph_fast(text: str) -> Graph | None:
    """Array parse of a well-formed file; None means "use the line parser",
    which then reports the exact problem."""
    rows = [r for r in map(str.split, text.splitlines()) if r and not r[0].startswith("c")]
    if not rows or len(rows[0]) != 4 or rows[0][:2] != ["p", "tw"]:
        return None
    body = rows[1:]
    if any(len(r) != 2 for r in body):
        return None
    try:
        n, m = int(rows[0][2]), int(rows[0][3])
        edges = np.array(body, dtype=np.int64).reshape(-1, 2)
    except (ValueError, OverflowError):
        return None
    if n < 0 or m != len(body):
        return None
    try:
        return Graph.from_edge_array(n, edges)
    except ValueError:
        return None


def parse_graph(text: str | bytes) -> Graph:
    text = _decode(text)
    fast = _parse_graph_fast(text)
    if fast is not None:
        return fast
    n = m = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    for no, parts in _lines(text):
        if parts[0] == "p":
            if n is not None:
                raise ParseError("second 'p' header", no)
            n, m = _header(parts, no, ("p", "tw"), 2)
            header_line = no
            continue
        if n is None:
            raise ParseError("edge line before 'p tw' header", no)
        if len(parts) != 2:
            raise ParseError("edge line must hold exactly two vertex ids", no)
        u, v = _ints(parts, no)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex id out of range 1..{n}", no)
        if u == v:
            raise ParseError(f"self-loop on vertex {u}", no)
        edges.append((u, v))
    if n is None:
        raise ParseError("missing 'p tw <n> <m>' header")
    if len(edges) != m:
        raise ParseError(f"header announces {m} edge lines, found {len(edges)}", header_line)
    return Graph.from_edges(n, edges)


def emit_graph(g: Graph) -> str:
    edges = list(g.edges())
    out = [f"p tw {g.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"


# -- .td ---------------------------------------------------------------------

def parse_td(text: str | bytes) -> TreeDecomposition:
    """Parse a ``.td`` file. A ``c root <id>`` comment is kept as ``td_root``
    via :func:`parse_td_root`; the returned object is a plain decomposition."""
    header = None
    header_line = 0
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    for no, parts in _lines(text):
        if parts[0] == "s":
            if header is not None:
                raise ParseError("second 's td' header", no)
            header = _header(parts, no, ("s", "td"), 3)
            header_line = no
            continue
        if header is None:
            raise ParseError("content before 's td' header", no)
        num_bags, max_size, n = header
        if parts[0] == "b":
            if len(parts) < 2:
                raise ParseError("bag line without id", no)
            vals = _ints(parts[1:], no)
            bid, verts = vals[0], vals[1:]
            if bid in bags:
                raise ParseError(f"duplicate bag id {bid}", no)
            if any(not 1 <= v <= n for v in verts):
                raise ParseError(f"bag vertex out of range 1..{n}", no)
            if len(set(verts)) != len(verts):
                raise ParseError("repeated vertex in bag", no)
            bags[bid] = frozenset(verts)
        else:
            if len(parts) != 2:
                raise ParseError("tree edge line must hold two bag ids", no)
            a, b = _ints(parts, no)
            edges.append((a, b))
    if header is None:
        raise ParseError("missing 's td' header")
    num_bags, max_size, n = header
    if len(bags) != num_bags:
        raise ParseError(f"header announces {num_bags} bags, found {len(bags)}", header_line)
    actual = max((len(b) for b in bags.values()), default=0)
    if actual != max_size:
        raise ParseError(f"header announces max bag size {max_size}, found {actual}", header_line)
    for a, b in edges:
        if a not in bags or b not in bags:
            raise ParseError(f"tree edge ({a}, {b}) references an unknown bag", header_line)
    return TreeDecomposition.build(bags, edges, n)


def parse_td_root(text: str | bytes) -> int | None:
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8", errors="replace")
    for raw in text.splitlines():
        parts = raw.split()
        if len(parts) == 3 and parts[0] == "c" and parts[1] == "root":
            try:
                return int(parts[2])
            except ValueError:
                return None
    return None


def emit_td(td: TreeDecomposition) -> str:
    out = []
    if isinstance(td, NormalizedTreeDecomposition):
        out.append(f"c root {td.root}")
    size = max((len(b) for b in td.bags.values()), default=0)
    out.append(f"s td {len(td.bags)} {size} {td.target_n}")
    for i in sorted(td.bags):
        out.append(" ".join(["b", str(i), *map(str, sorted(td.bags[i]))]))
    out.extend(f"{a} {b}" for a, b in sorted(td.tree_edges))
    return "\n".join(out) + "\n"


# -- box files -------------------------------------------------------------

def parse_box(text: str | bytes):
    from .boxrep import BoxRepresentation

    header = None
    header_line = 0
    rows: dict[int, list[int]] = {}
    for no, parts in _lines(text):
        if parts[0] == "s":
            if header is not None:
                raise ParseError("second 's box' header", no)
            header = _header(parts, no, ("s", "box"), 2)
            header_line = no
            if header[1] < 1:
                raise ParseError("box dimension must be at least 1", no)
            continue
        if header is None:
            raise ParseError("content before 's box' header", no)
        n, d = header
        if parts[0] != "v":
            raise ParseError("expected a 'v' line", no)
        vals = _ints(parts[1:], no)
        if len(vals) != 1 + 2 * d:
            raise ParseError(f"'v' line needs a vertex and {2 * d} endpoints", no)
        v = vals[0]
        if not 1 <= v <= n:
            raise ParseError(f"vertex id out of range 1..{n}", no)
        if v in rows:
            raise ParseError(f"duplicate vertex {v}", no)
        ends = vals[1:]
        if any(ends[2 * j] > ends[2 * j + 1] for j in range(d)):
            raise ParseError("interval with left endpoint above right endpoint", no)
        rows[v] = ends
    if header is None:
        raise ParseError("missing 's box' header")
    n, d = header
    if len(rows) != n:
        raise ParseError(f"header announces {n} vertices, found {len(rows)}", header_line)
    arr = np.array([rows[v] for v in range(1, n + 1)], dtype=np.int64).reshape(n, 2 * d)
    return BoxRepresentation(np.ascontiguousarray(arr[:, 0::2]), np.ascontiguousarray(arr[:, 1::2]))


def emit_box(b) -> str:
    n, d = b.lo.shape
    inter = np.empty((n, 2 * d), dtype=np.int64)
    inter[:, 0::2] = b.lo
    inter[:, 1::2] = b.hi
    out = [f"s box {n} {d}"]
    for i, row in enumerate(inter.tolist(), start=1):
        out.append("v " + " ".join(map(str, [i, *row])))
    return "\n".join(out) + "\n"


# -- arc families, caterpillars, orders --------------------------------------

def parse_arcs(text: str | bytes):
    from .classes import ArcFamily

    header = None
    header_line = 0
    arcs: dict[int, tuple[int, int]] = {}
    for no, parts in _lines(text):
        if parts[0] == "s":
            if header is not None:
                raise ParseError("second 's arcs' header", no)
            header = _header(parts, no, ("s", "arcs"), 2)
            header_line = no
            continue
        if header is None:
            raise ParseError("content before 's arcs' header", no)
        n, m = header
        if parts[0] != "a" or len(parts) != 4:
            raise ParseError("expected 'a <vertex> <start> <end>'", no)
        v, s, e = _ints(parts[1:], no)
        if not 1 <= v <= n:
            raise ParseError(f"vertex id out of range 1..{n}", no)
        if not (0 <= s < m and 0 <= e < m):
            raise ParseError(f"arc position out of range 0..{m - 1}", no)
        if v in arcs:
            raise ParseError(f"duplicate arc for vertex {v}", no)
        arcs[v] = (s, e)
    if header is None:
        raise ParseError("missing 's arcs' header")
    n, m = header
    if len(arcs) != n:
        raise ParseError(f"header announces {n} arcs, found {len(arcs)}", header_line)
    return ArcFamily(m, arcs)


def emit_arcs(fam) -> str:
    out = [f"s arcs {fam.n} {fam.m}"]
    out.extend(f"a {v} {s} {e}" for v, (s, e) in sorted(fam.arcs.items()))
    return "\n".join(out) + "\n"


def parse_caterpillar(text: str | bytes):
    from .classes import Caterpillar

    header = None
    header_line = 0
    spine: list[int] = []
    leaves: dict[int, frozenset[int]] = {}
    for no, parts in _lines(text):
        if parts[0] == "s":
            if header is not None:
                raise ParseError("second 's cat' header", no)
            header = _header(parts, no, ("s", "cat"), 1)
            header_line = no
            continue
        if header is None:
            raise ParseError("content before 's cat' header", no)
        if parts[0] != "p" or len(parts) < 2:
            raise ParseError("expected 'p <spine_vertex> <leaf> ...'", no)
        vals = _ints(parts[1:], no)
        if any(v < 1 for v in vals):
            raise ParseError("vertex ids must be positive", no)
        spine.append(vals[0])
        leaves[vals[0]] = frozenset(vals[1:])
    if header is None:
        raise ParseError("missing 's cat' header")
    if len(spine) != header[0]:
        raise ParseError(f"header announces {header[0]} spine vertices, found {len(spine)}", header_line)
    try:
        return Caterpillar(tuple(spine), leaves)
    except ValueError as exc:
        raise ParseError(str(exc), header_line) from None


def emit_caterpillar(cat) -> str:
    out = [f"s cat {len(cat.spine)}"]
    for p in cat.spine:
        out.append(" ".join(["p", str(p), *map(str, sorted(cat.leaves.get(p, ())))]))
    return "\n".join(out) + "\n"


def parse_order(text: str | bytes):
    """``s order <n>`` then the vertices listed by increasing position."""
    from .classes import LinearOrder

    header = None
    seq: list[int] = []
    for no, parts in _lines(text):
        if parts[0] == "s":
            if header is not None:
                raise ParseError("second 's order' header", no)
            header = _header(parts, no, ("s", "order"), 1)
            continue
        if header is None:
            raise ParseError("content before 's order' header", no)
        if seq:
            raise ParseError("the order must be given on a single line", no)
        seq = _ints(parts, no)
    if header is None:
        raise ParseError("missing 's order' header")
    if sorted(seq) != list(range(1, header[0] + 1)):
        raise ParseError(f"order is not a permutation of 1..{header[0]}")
    return LinearOrder.from_sequence(seq)


def emit_order(order) -> str:
    seq = order.sequence
    body = " ".join(map(str, seq))
    return f"s order {len(seq)}\n" + (body + "\n" if seq else "")
