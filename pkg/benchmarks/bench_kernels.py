"""Compare the compiled and pure-Python pair-scan kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--wall-max 1.0]
"""

import argparse
import time

import numpy as np

from ctrkit import DesignConstraints, DesignGrid, NYLON12_MJF, enumerate_designs
from ctrkit import _backend, _kernels_py
from ctrkit.design import _grid_tubes
from ctrkit.tube import bending_stiffness


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--wall-max", type=float, default=1.0)
    ap.add_argument("--od-step", type=float, default=0.1)
    args = ap.parse_args()

    c = DesignConstraints(max_recoverable_strain=0.06, radius_min=15.0)
    grid = DesignGrid.from_steps(c, od_step=args.od_step, wall_step=0.1, n_radii=16, wall_max=args.wall_max)
    tubes = _grid_tubes(grid, c, NYLON12_MJF)
    od = np.array([t.od for t in tubes])
    wall = np.array([t.wall for t in tubes])
    curv = np.array([t.precurvature for t in tubes])
    stiff = np.array([bending_stiffness(t) for t in tubes])
    n = len(tubes)
    print(f"candidate tubes: {n}  pair combinations: {n * n}")

    kernels = {"python": _kernels_py.pair_scan}
    if _backend.BACKEND == "cython":
        from ctrkit import _kernels

        kernels["cython"] = _kernels.pair_scan
    else:
        print("compiled kernel not built; timing the Python kernel only")

    results = {}
    for name, scan in kernels.items():
        t = best_of(lambda: scan(od, wall, curv, stiff, c.min_clearance, 1 / 50.0, 0, n), args.repeat)
        results[name] = t
        print(f"pair_scan[{name:6s}]  {t * 1e3:9.2f} ms  ({n * n / t / 1e6:7.2f} M pairs/s)")
    if len(results) == 2:
        print(f"kernel speedup: {results['python'] / results['cython']:.1f}x")

    for name, scan in kernels.items():
        _backend.pair_scan = scan
        t = best_of(lambda: enumerate_designs(50.0, c, grid), max(1, args.repeat // 2))
        print(f"enumerate_designs[{name:6s}]  {t * 1e3:9.2f} ms end to end")


if __name__ == "__main__":
    main()
