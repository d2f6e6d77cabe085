"""Compiled kernel against the pure-Python kernel on random products.

    python3 benchmarks/bench_kernel.py [--pairs 200] [--deg 4] [--repeat 3]

Cold runs start from empty multiplication tables, warm runs reuse them.
"""

import argparse
import random
import time

from qpd import _kernel_py
from qpd.ncalgebra import U2_EXT, _RHO_RULE, _U2_COMM

try:
    from qpd import _kernel
except ImportError:
    _kernel = None


def random_terms(r, n, deg, nterms):
    out = {}
    for _ in range(nterms):
        exps = [0] * n
        for _ in range(r.randint(0, deg)):
            exps[r.randrange(n)] += 1
        key = tuple(exps) + (r.randint(0, 1), r.randint(0, 2))
        out[key] = (r.randint(-9, 9) or 1, r.randint(-9, 9), r.randint(1, 4))
    return out


def run(mod, pairs, repeat):
    best_cold = best_warm = float("inf")
    results = None
    for _ in range(repeat):
        T = mod.Tables(U2_EXT.n, _U2_COMM, _RHO_RULE)
        t = time.perf_counter()
        results = [mod.mul(T, a, b) for a, b in pairs]
        best_cold = min(best_cold, time.perf_counter() - t)
        t = time.perf_counter()
        for a, b in pairs:
            mod.mul(T, a, b)
        best_warm = min(best_warm, time.perf_counter() - t)
    return best_cold, best_warm, results


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--deg", type=int, default=4)
    ap.add_argument("--terms", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    r = random.Random(args.seed)
    n = U2_EXT.n
    pairs = [(random_terms(r, n, args.deg, args.terms), random_terms(r, n, args.deg, args.terms))
             for _ in range(args.pairs)]
    py_cold, py_warm, py_res = run(_kernel_py, pairs, args.repeat)
    print(f"python  cold {py_cold * 1e3:9.1f} ms  warm {py_warm * 1e3:9.1f} ms")
    if _kernel is None:
        print("cython  not built (pip install -e . --no-build-isolation)")
        return
    cy_cold, cy_warm, cy_res = run(_kernel, pairs, args.repeat)
    print(f"cython  cold {cy_cold * 1e3:9.1f} ms  warm {cy_warm * 1e3:9.1f} ms")
    print(f"speedup cold {py_cold / cy_cold:5.2f}x  warm {py_warm / cy_warm:5.2f}x")
    print("results identical:", py_res == cy_res)


if __name__ == "__main__":
    main()
