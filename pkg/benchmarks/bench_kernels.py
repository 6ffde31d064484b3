"""Compare the compiled and numpy curvature kernels.

    python benchmarks/bench_kernels.py [--points 400] [--repeat 5]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from su2pfaff import nurowski as nw
from su2pfaff.curvature import available_backends, riemann_batch
from su2pfaff.manifold import sample_points


def inputs(n: int, seed: int = 0):
    gf = nw.case_metric(nw.THEOREM_SPECS["c1m"])
    j = gf.jet(sample_points(np.random.default_rng(seed), n))
    return j.val, j.grad, j.hess


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=400)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    g, dg, ddg = inputs(args.points)
    ref = riemann_batch(g, dg, ddg, "python")
    print(f"{'backend':<8} {'points':>7} {'best [ms]':>10} {'per point [us]':>15} {'max |diff|':>11}")
    for b in available_backends():
        t = best_of(lambda: riemann_batch(g, dg, ddg, b), args.repeat)
        diff = max(float(np.abs(x - y).max()) for x, y in zip(riemann_batch(g, dg, ddg, b), ref))
        print(f"{b:<8} {args.points:>7} {t * 1e3:>10.2f} {t / args.points * 1e6:>15.2f} {diff:>11.1e}")


if __name__ == "__main__":
    main()
