"""Compare the compiled and pure-Python branch-and-bound backends.

    python3 benchmarks/bench_search.py [--repeat 3]
"""

import argparse
import time

from symmetra import _backend
from symmetra.sidon import search_C, search_R

CASES = [
    ("R", 2, 25),
    ("R", 3, 30),
    ("R", 6, 17),
    ("C", 2, 31),
    ("C", 4, 31),
]


def bench(kind, g, n, backend, repeat):
    search = search_R if kind == "R" else search_C
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        r = search(g, n, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return r, best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-python-over", type=float, default=60.0,
                    help="skip the Python backend when the compiled one takes longer than this many ms")
    args = ap.parse_args()
    if _backend.BACKEND != "cython":
        print("compiled backend unavailable; only the Python backend will run")
    print(f"{'case':<12}{'size':>6}{'nodes':>12}{'cython s':>12}{'python s':>12}{'speedup':>10}")
    for kind, g, n in CASES:
        row = f"{kind}({g},{n})"
        rc = tc = None
        if _backend.BACKEND == "cython":
            rc, tc = bench(kind, g, n, "cython", args.repeat)
        if tc is not None and tc * 1000 > args.skip_python_over:
            rp, tp = None, None
        else:
            rp, tp = bench(kind, g, n, "python", 1)
        ref = rc or rp
        if rc is not None and rp is not None:
            assert rc.size == rp.size and rc.nodes == rp.nodes, "backends disagree"
        speed = f"{tp / tc:10.1f}" if tc and tp else f"{'-':>10}"
        tcs = f"{tc:12.4f}" if tc is not None else f"{'-':>12}"
        tps = f"{tp:12.4f}" if tp is not None else f"{'-':>12}"
        print(f"{row:<12}{ref.size:>6}{ref.nodes:>12}{tcs}{tps}{speed}")


if __name__ == "__main__":
    main()
