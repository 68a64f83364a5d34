"""Command-line interface.

Exit status: 0 success/verified, 1 verification or validation failed,
2 input or parse error, 3 search limit exceeded.
"""

from __future__ import annotations

import argparse
import gc
import os
import sys
import tempfile
import time
from pathlib import Path

from . import formats
from .boxrep import build_box_representation, verify_box_representation
from .classes import (
    caterpillar_path_decomposition,
    circular_arc_path_decomposition,
    clique_tree_decomposition,
    cocomparability_path_decomposition,
    arc_intersection_graph,
    lexbfs_peo,
    permutation_cocomp_order,
)
from .decompose import heuristic_decompose
from .errors import InvalidDecompositionError, LimitError, ParseError, PreconditionError
from .families import (
    complete_kpartite,
    random_arc_family,
    random_chordal,
    random_partial_ktree,
    random_permutation,
    roberts_graph,
    tightness_instance,
)
from .graph import clique_number
from .oracle import boxicity_exact_tiny, boxicity_upper_search, is_interval_graph
from .treedec import validate_td

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class InputError(Exception):
    pass


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temp file in the target directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str):
    return formats.parse_graph(_read(path))


def _load_td(path: str):
    return formats.parse_td(_read(path))


def cmd_validate(args) -> int:
    g = _load_graph(args.graph)
    td = _load_td(args.td)
    report = validate_td(g, td)
    for line in report.lines():
        print(line)
    print("valid" if report.ok else "invalid")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_boxrep(args) -> int:
    g = _load_graph(args.graph)
    if g.n == 0:
        raise InputError("graph has no vertices")
    t0 = time.perf_counter()
    td = _load_td(args.td) if args.td else heuristic_decompose(g, args.strategy, args.seed)
    try:
        box = build_box_representation(g, td)
    except InvalidDecompositionError as exc:
        print(f"invalid decomposition: {exc}")
        return EXIT_FAIL
    report = verify_box_representation(g, box, sweep=not args.pairwise)
    elapsed = (time.perf_counter() - t0) * 1000.0
    if not report.ok:
        print(f"self-verification failed: missing={report.missing[:5]} extra={report.extra[:5]}")
        return EXIT_FAIL
    if args.out:
        write_atomic(args.out, formats.emit_box(box))
    print(f"width={td.width} dim={box.d} n={g.n} ms={elapsed:.1f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    box = formats.parse_box(_read(args.box))
    if box.n != g.n:
        raise InputError(f"box file has n={box.n}, graph has n={g.n}")
    report = verify_box_representation(g, box, sweep=args.sweep)
    if report.ok:
        print(f"verified n={g.n} d={box.d}")
        return EXIT_OK
    for u, v in report.missing:
        print(f"missing {u} {v}")
    for u, v in report.extra:
        print(f"extra {u} {v}")
    return EXIT_FAIL


def _ints(values, count: int | None, what: str) -> list[int]:
    try:
        out = [int(x) for x in values]
    except ValueError:
        raise InputError(f"{what}: parameters must be integers") from None
    if count is not None and len(out) != count:
        raise InputError(f"{what} takes {count} parameter(s), got {len(out)}")
    return out


def cmd_gen(args) -> int:
    fam = args.family
    files: dict[str, str] = {}
    width = None
    try:
        if fam == "roberts":
            (half,) = _ints(args.params, 1, fam)
            g = roberts_graph(half)
        elif fam == "kpartite":
            sizes = _ints(args.params, None, fam)
            g = complete_kpartite(sizes)
        elif fam == "tightness":
            (t,) = _ints(args.params, 1, fam)
            inst = tightness_instance(t)
            g = inst.graph
            width = inst.star_td.width
            files[".td"] = formats.emit_td(inst.star_td)
        elif fam == "partial-ktree":
            n, k = _ints(args.params, 2, fam)
            g, td = random_partial_ktree(n, k, args.seed, args.p_delete)
            width = td.width
            files[".td"] = formats.emit_td(td)
        elif fam == "chordal":
            (n,) = _ints(args.params, 1, fam)
            g = random_chordal(n, args.seed)
        elif fam == "permutation":
            (n,) = _ints(args.params, 1, fam)
            g, order = permutation_cocomp_order(random_permutation(n, args.seed))
            files[".order"] = formats.emit_order(order)
        elif fam == "arcs":
            n, m = _ints(args.params, 2, fam)
            arcs = random_arc_family(n, m, args.seed)
            g = arc_intersection_graph(arcs)
            files[".arcs"] = formats.emit_arcs(arcs)
        else:  # argparse restricts choices
            raise InputError(f"unknown family {fam}")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    files[".gr"] = formats.emit_graph(g)
    summary = f"n={g.n} m={g.m}" + (f" width={width}" if width is not None else "")
    if args.out:
        for suffix, text in files.items():
            write_atomic(args.out + suffix, text)
        print(summary)
    else:
        sys.stdout.write(files[".gr"])
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_class(args) -> int:
    kind = args.kind
    inputs = args.inputs
    need = {"chordal": 1, "circarc": 1, "cocomp": 2, "caterpillar": 2}[kind]
    if len(inputs) != need:
        raise InputError(f"class {kind} takes {need} input file(s)")
    try:
        if kind == "chordal":
            g = _load_graph(inputs[0])
            peo, hole = lexbfs_peo(g)
            if peo is None:
                print(f"not chordal: chordless cycle {' '.join(map(str, hole))}")
                return EXIT_FAIL
            td = clique_tree_decomposition(g, peo)
            omega = td.width + 1
            bound, label = omega + 1, "omega+1"
        elif kind == "circarc":
            arcs = formats.parse_arcs(_read(inputs[0]))
            g = arc_intersection_graph(arcs)
            td = circular_arc_path_decomposition(arcs)
            bound, label = 2 * clique_number(g) + 1, "2*omega+1"
        elif kind == "cocomp":
            g = _load_graph(inputs[0])
            order = formats.parse_order(_read(inputs[1]))
            td = cocomparability_path_decomposition(g, order)
            bound, label = 2 * g.max_degree + 1, "2*maxdeg+1"
        else:
            g = _load_graph(inputs[0])
            cat = formats.parse_caterpillar(_read(inputs[1]))
            td = caterpillar_path_decomposition(cat, g)
            bound, label = 3 * g.max_degree, "3*maxdeg"
    except PreconditionError as exc:
        print(f"precondition failed: {exc}")
        return EXIT_FAIL
    report = validate_td(g, td)
    if not report.ok:
        for line in report.lines():
            print(line)
        return EXIT_FAIL
    if args.out:
        write_atomic(args.out, formats.emit_td(td))
    print(f"width={td.width} dim={td.width + 2} bound={bound} ({label})")
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    if g.n == 0:
        raise InputError("graph has no vertices")
    mode = args.mode
    witness = None
    if mode == "interval":
        chk = is_interval_graph(g)
        print(f"interval={'true' if chk.is_interval else 'false'}")
        if chk.hole:
            print("hole " + " ".join(map(str, chk.hole)))
        elif not chk.is_interval:
            print(chk.reason)
        if chk.realization is not None:
            from .boxrep import BoxRepresentation
            witness = BoxRepresentation.from_realizations([chk.realization])
        code = EXIT_OK
    elif mode == "exact":
        cert = boxicity_exact_tiny(g)
        print(f"boxicity={cert.value}")
        witness = cert.witness
        code = EXIT_OK
    elif mode.startswith("upper:"):
        try:
            b = int(mode.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad mode {mode!r}") from None
        witness = boxicity_upper_search(g, b, args.budget)
        if witness is None:
            print(f"no {b}-dimensional witness found within budget (inconclusive)")
            code = EXIT_FAIL
        else:
            print(f"boxicity<={b}")
            code = EXIT_OK
    else:
        raise InputError(f"bad mode {mode!r}; use interval, exact or upper:<b>")
    if witness is not None and args.out:
        write_atomic(args.out, formats.emit_box(witness))
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="boxtw", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a .td against a .gr")
    s.add_argument("graph")
    s.add_argument("td")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("boxrep", help="build and self-verify a box representation")
    s.add_argument("graph")
    s.add_argument("td", nargs="?")
    s.add_argument("--strategy", choices=["min-degree", "min-fill"], default="min-degree")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.add_argument("--pairwise", action="store_true", help="use the quadratic verifier instead of the sweep")
    s.set_defaults(func=cmd_boxrep)

    s = sub.add_parser("verify", help="check a box file against a graph")
    s.add_argument("graph")
    s.add_argument("box")
    s.add_argument("--sweep", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="generate instances")
    s.add_argument("family", choices=["roberts", "kpartite", "tightness", "partial-ktree", "chordal", "permutation", "arcs"])
    s.add_argument("params", nargs="*")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--p-delete", type=float, default=0.2)
    s.add_argument("--out", help="output path prefix; suffixes .gr/.td/... are appended")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("class", help="decompositions for special graph classes")
    s.add_argument("kind", choices=["chordal", "circarc", "cocomp", "caterpillar"])
    s.add_argument("inputs", nargs="+")
    s.add_argument("--out")
    s.set_defaults(func=cmd_class)

    s = sub.add_parser("oracle", help="brute-force checks for small graphs")
    s.add_argument("graph")
    s.add_argument("--mode", default="exact")
    s.add_argument("--budget", type=int, default=200_000)
    s.add_argument("--out")
    s.set_defaults(func=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    # commands allocate many small acyclic containers; generational passes
    # over them only add super-linear overhead
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        return args.func(args)
    except (ParseError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LimitError as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    finally:
        if was_enabled:
            gc.enable()


if __name__ == "__main__":
    sys.exit(main())
