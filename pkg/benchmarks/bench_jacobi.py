"""Compare the compiled and pure-Python Jacobi backends on lattice Laplacians.

    python3 benchmarks/bench_jacobi.py [--sizes 4,8,12] [--repeat 3]

Sizes are hexagonal free-boundary patches (2(m+1)^2 vertices).
"""

import argparse
import time

import numpy as np

from lattice_lel.jacobi import COMPILED_AVAILABLE, jacobi_eigh
from lattice_lel.lattice import Boundary, Family, LatticeSpec, build
from lattice_lel.spectral import laplacian_matrix


def bench(matrix, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        vals, _, info = jacobi_eigh(matrix, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, np.sort(vals), info.sweeps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="4,8,12")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not COMPILED_AVAILABLE:
        print("compiled extension not built; only the python backend is available")
    print(f"{'lattice':>16} {'n':>5} {'sweeps':>6} {'python s':>9} {'compiled s':>10} {'speedup':>8} {'max diff':>9}")
    for m in (int(s) for s in args.sizes.split(",")):
        spec = LatticeSpec(Family.HEXAGONAL, Boundary.FREE, m, m)
        lap = laplacian_matrix(build(spec))
        tp, vp, sweeps = bench(lap, "python", args.repeat)
        if COMPILED_AVAILABLE:
            tc, vc, _ = bench(lap, "compiled", args.repeat)
            diff = float(np.max(np.abs(vp - vc)))
            print(f"{spec.tag:>16} {len(lap):5d} {sweeps:6d} {tp:9.3f} {tc:10.3f} {tp / tc:8.1f} {diff:9.1e}")
        else:
            print(f"{spec.tag:>16} {len(lap):5d} {sweeps:6d} {tp:9.3f} {'-':>10} {'-':>8} {'-':>9}")


if __name__ == "__main__":
    main()
