"""Time the numba and numpy kernel backends on random systems.

    python3 benchmarks/bench_kernels.py [--sizes 10 14 18] [--repeat 3]

Each row checks that both backends return identical tables before timing.
"""
import argparse
import time

import numpy as np

from netclosure import NodeMap, kernels
from netclosure.oracle import random_system


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 12, 14, 16, 18, 20])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--p", type=float, default=0.3)
    args = ap.parse_args(argv)

    impls = kernels.backends()
    if "numba" not in impls:
        print("numba is not importable; only the numpy backend can be timed")
    small = random_system(6, args.p, 0)
    for k in impls.values():  # JIT warm-up
        k.all_closures(small.region_rows(), small.n)
        k.continuity_violations(small.region_rows(), small.region_rows(), np.array([1 << i for i in range(6)]))

    names = sorted(impls)
    header = f"{'kernel':<24}{'n':>4}" + "".join(f"{nm + ' s':>12}" for nm in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for n in args.sizes:
        s = random_system(n, args.p, seed=n)
        t = s.without_edge(*s.symmetric_edges()[0]) if s.symmetric_edges() else s
        images = NodeMap.identity(s, t).image_rows()
        rows, trows = s.region_rows(), t.region_rows()
        cases = {
            "all_closures": lambda k: k.all_closures(rows, n),
            "continuity_violations": lambda k: k.continuity_violations(rows, trows, images),
        }
        for label, call in cases.items():
            outs = [call(impls[nm]) for nm in names]
            assert all(np.array_equal(outs[0], o) for o in outs[1:]), f"backends disagree: {label} n={n}"
            secs = [best_of(lambda nm=nm: call(impls[nm]), args.repeat) for nm in names]
            line = f"{label:<24}{n:>4}" + "".join(f"{x:>12.4f}" for x in secs)
            if len(names) == 2:
                line += f"{secs[names.index('numpy')] / max(secs[names.index('numba')], 1e-9):>9.1f}x"
            print(line)


if __name__ == "__main__":
    main()
