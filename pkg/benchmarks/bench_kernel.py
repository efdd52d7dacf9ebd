"""Compiled vs pure-Python enumeration kernel.

    python3 benchmarks/bench_kernel.py [--bound 6] [--repeat 3]

Runs both kernels on the same matching systems, checks that they return
the same vectors, and prints the best wall time of each.
"""

import argparse
import time

from lenslab import _enum_py
from lenslab.lens import build_lens, closed_complex
from lenslab.lst import build_minimal, materialize
from lenslab.normal import _kernel_equations, _tet_order

try:
    from lenslab import _enum
except ImportError:
    _enum = None


CASES = [
    ("LST 2/7", lambda: materialize(build_minimal(2, 7))),
    ("LST 3/8", lambda: materialize(build_minimal(3, 8))),
    ("LST 1/8", lambda: materialize(build_minimal(1, 8))),
    ("L(7,2)", lambda: closed_complex(build_lens(7, 2))),
    ("L(17,5)", lambda: closed_complex(build_lens(17, 5))),
]


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _enum is None:
        print("compiled kernel not built; run: python3 setup.py build_ext --inplace")
    print(f"{'case':10} {'tets':>4} {'vectors':>8} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, make in CASES:
        T = make()
        order = _tet_order(T)
        eqs = _kernel_equations(T, order, -1, -1)
        n = T.tet_count

        def run(k):
            return lambda: sorted(k.enumerate_kernel(n, order, eqs, args.bound, reduced=True))

        tp, vp = best_of(run(_enum_py), args.repeat)
        if _enum is None:
            print(f"{name:10} {n:>4} {len(vp):>8} {tp:>10.4f} {'-':>11} {'-':>8}")
            continue
        tc, vc = best_of(run(_enum), args.repeat)
        if vp != vc:
            raise SystemExit(f"{name}: kernels disagree")
        print(f"{name:10} {n:>4} {len(vp):>8} {tp:>10.4f} {tc:>11.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
