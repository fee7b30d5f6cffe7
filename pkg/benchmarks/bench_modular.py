"""Compare the compiled and pure-Python modular elimination kernels.

    python benchmarks/bench_modular.py [--sizes 40 80 160] [--repeat 3]

Times ``rref_mod`` on random dense matrices modulo a 62-bit prime and a
full exact kernel solve (the aut system of a catalog cubic) with each
backend.  Results from both backends are checked to be identical.
"""

import argparse
import random
import time

import numpy as np

from legendrian.catalog import catalog_cubic
from legendrian.exact import modular
from legendrian.exact._modkernel_py import rref_mod as rref_py
from legendrian.symmetry import compute_aut


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def bench_rref(sizes, repeat):
    p = modular.default_primes()[0]
    rng = random.Random(0)
    print(f"{'size':>6} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for n in sizes:
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        tp, piv_p = best_of(lambda: rref_py([list(r) for r in rows], p), repeat)
        if modular.BACKEND != "cython":
            print(f"{n:>6} {tp:>10.4f} {'n/a':>11}")
            continue
        tc, piv_c = best_of(lambda: modular.rref_mod(np.array(rows, dtype=np.uint64), p), repeat)
        assert list(piv_c) == list(piv_p)
        print(f"{n:>6} {tp:>10.4f} {tc:>11.4f} {tp / tc:>7.1f}x")


def bench_kernel(names, repeat):
    print(f"\n{'cubic':>6} {'python s':>10} {'compiled s':>11} {'aut dim':>8}")
    compiled = modular._compiled
    for name in names:
        f = catalog_cubic(name).cubic
        modular._compiled = None
        tp, rp = best_of(lambda: compute_aut(f, "modular"), repeat)
        modular._compiled = compiled
        if compiled is None:
            print(f"{name:>6} {tp:>10.4f} {'n/a':>11} {rp.dim:>8}")
            continue
        tc, rc = best_of(lambda: compute_aut(f, "modular"), repeat)
        assert rc.space == rp.space
        print(f"{name:>6} {tp:>10.4f} {tc:>11.4f} {rc.dim:>8}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[40, 80, 160])
    ap.add_argument("--cubics", nargs="+", default=["E6", "E7", "E8"])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"backend available: {modular.BACKEND}")
    bench_rref(args.sizes, args.repeat)
    bench_kernel(args.cubics, args.repeat)


if __name__ == "__main__":
    main()
