"""
Compare the compiled and pure-Python mod-p elimination kernels.

    python benchmarks/bench_kernels.py [--reps N]

Reports per-call time on random matrices at the sizes that dominate the
counting code (Hom constraint systems) and one end-to-end workload.
"""

import argparse
import time

import numpy as np

from quiverorbits import linalg
from quiverorbits.dynkin import adapted_word, build_diagram, build_quiver
from quiverorbits.orbits import elementary_ops


def time_kernel(name, shapes, p, reps, rng):
    linalg.use_backend(name)
    mats = [rng.integers(0, p, size=s) for s in shapes for _ in range(reps)]
    t0 = time.perf_counter()
    for m in mats:
        linalg.rank(m, linalg.GF(p))
    return (time.perf_counter() - t0) / len(mats)


def time_workload(name):
    linalg.use_backend(name)
    aw = adapted_word(build_quiver(build_diagram("D", 5)))
    from quiverorbits import repkit
    repkit.indecomposable.cache_clear()
    repkit.hom_table.cache_clear()
    t0 = time.perf_counter()
    elementary_ops(aw)
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--reps", type=int, default=200)
    args = ap.parse_args()
    if linalg._compiled is None:
        raise SystemExit("compiled kernel not built; reinstall with Cython available")
    rng = np.random.default_rng(0)
    print(f"{'shape':>12} {'python us':>10} {'cython us':>10} {'speedup':>8}")
    for shape in [(6, 8), (12, 16), (24, 30), (60, 60), (120, 140)]:
        py = time_kernel("python", [shape], 13, args.reps, rng)
        cy = time_kernel("cython", [shape], 13, args.reps, rng)
        print(f"{str(shape):>12} {py * 1e6:>10.1f} {cy * 1e6:>10.1f} {py / cy:>8.1f}")
    py = time_workload("python")
    cy = time_workload("cython")
    print(f"elementary operations of D5: python {py:.2f}s  cython {cy:.2f}s  speedup {py / cy:.1f}")


if __name__ == "__main__":
    main()
