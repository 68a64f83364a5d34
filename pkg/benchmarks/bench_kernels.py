"""Compare the numba kernels against their pure-numpy fallbacks.

Kernel timings call both variants directly in one process. Pipeline timings
run ``build_box_representation`` plus the sweep verifier in a subprocess,
once with and once without ``BOXTW_PURE_NUMPY=1``.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --sizes 1000 5000 --pairwise-max 2000
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from boxtw import _kernels
from boxtw.boxrep import _child_csr, _heights, build_box_representation, theta_coloring
from boxtw.families import random_partial_ktree
from boxtw.treedec import normalize

PIPELINE = """
import sys, time
from boxtw import _kernels
from boxtw.boxrep import build_box_representation, verify_box_representation
from boxtw.families import random_partial_ktree
n, k = int(sys.argv[1]), int(sys.argv[2])
warm_g, warm_td = random_partial_ktree(50, k, seed=1)
build_box_representation(warm_g, warm_td)
g, td = random_partial_ktree(n, k, seed=7)
t0 = time.perf_counter()
b = build_box_representation(g, td)
assert verify_box_representation(g, b, sweep=True).ok
print(_kernels.USE_NUMBA, time.perf_counter() - t0)
"""


def best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_inputs(n: int, k: int):
    g, td = random_partial_ktree(n, k, seed=7)
    ntd = normalize(g, td)
    indptr, indices = g.csr
    theta = theta_coloring(ntd).as_array(n)
    ptr, idx = _child_csr(ntd)
    box = build_box_representation(g, td)
    return {
        "color_min_right": (indptr, indices, theta, _heights(ntd, n), ntd.width + 1),
        "dfs_first_last": (ptr, idx, ntd.root - 1),
        "pairwise_mismatch": (np.ascontiguousarray(box.lo), np.ascontiguousarray(box.hi), indptr, indices),
    }


def bench_kernels(sizes, k, repeats, pairwise_max):
    print(f"{'kernel':<20}{'n':>8}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for n in sizes:
        for name, args in kernel_inputs(n, k).items():
            if name == "pairwise_mismatch" and n > pairwise_max:
                continue
            fast = getattr(_kernels, f"{name}_numba")
            slow = getattr(_kernels, f"{name}_numpy")
            fast(*args)  # compile
            a = best_of(lambda: fast(*args), repeats)
            b = best_of(lambda: slow(*args), repeats)
            print(f"{name:<20}{n:>8}{a * 1e3:>12.2f}{b * 1e3:>12.2f}{b / a:>10.1f}")


def bench_pipeline(sizes, k):
    print(f"\n{'pipeline':<20}{'n':>8}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for n in sizes:
        times = {}
        for pure in (False, True):
            env = dict(os.environ)
            env.pop("BOXTW_PURE_NUMPY", None)
            if pure:
                env["BOXTW_PURE_NUMPY"] = "1"
            res = subprocess.run(
                [sys.executable, "-c", PIPELINE, str(n), str(k)],
                env=env, capture_output=True, text=True, check=True,
            )
            used_numba, secs = res.stdout.split()
            times[used_numba == "True"] = float(secs)
        if True not in times:
            print(f"{'build+verify':<20}{n:>8}{'-':>12}{times[False] * 1e3:>12.1f}{'-':>10}")
            continue
        a, b = times[True], times[False]
        print(f"{'build+verify':<20}{n:>8}{a * 1e3:>12.1f}{b * 1e3:>12.1f}{b / a:>10.1f}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[1000, 10_000, 50_000])
    ap.add_argument("--k", type=int, default=5, help="width of the partial k-trees")
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--pairwise-max", type=int, default=3000, help="skip the quadratic verifier above this n")
    args = ap.parse_args(argv)
    if not _kernels.NUMBA_AVAILABLE:
        print("numba is not installed; nothing to compare", file=sys.stderr)
        return 1
    bench_kernels(args.sizes, args.k, args.repeats, args.pairwise_max)
    bench_pipeline(args.sizes, args.k)
    return 0


if __name__ == "__main__":
    sys.exit(main())
