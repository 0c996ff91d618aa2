"""Benchmark the compiled Sturm-bisection kernel against the pure-Python twin.

Usage:
    python benchmarks/bench_sturm.py [--sizes 2000,8000,32000] [--count 4]

Matrices are real verification workloads: the discretized Kratzer-Fues
ground channel at several grid sizes.
"""

import argparse
import time

from miespec._kernels import available_backends
from miespec.oracle import OracleConfig, build_tridiagonal_radial, cell_grid
from miespec.potentials import kratzer_fues


def _matrix(size):
    grid = cell_grid(24.0, size)
    config = OracleConfig(grid=grid, count=4)
    return build_tridiagonal_radial(config, kratzer_fues(5.0, 1.0), 0, 3)


def _time(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="2000,8000,32000",
                        type=lambda s: [int(x) for x in s.split(",")])
    parser.add_argument("--count", type=int, default=4)
    args = parser.parse_args()

    backends = available_backends()
    print(f"available backends: {', '.join(sorted(backends))}")
    header = f"{'size':>8} {'backend':>10} {'count(x) [ms]':>14} {'solve [ms]':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for size in args.sizes:
        tri = _matrix(size)
        shift = float(tri.diag.min())
        base_solve = None
        for name in ("python", "compiled"):
            if name not in backends:
                continue
            mod = backends[name]
            t_count, _ = _time(lambda: mod.sturm_count(tri.diag, tri.offdiag, shift))
            t_solve, values = _time(
                lambda: mod.bisect_lowest(tri.diag, tri.offdiag, args.count, 1e-11))
            speed = ""
            if name == "python":
                base_solve = t_solve
            elif base_solve is not None:
                speed = f"{base_solve / t_solve:7.1f}x"
            print(f"{size:>8} {name:>10} {t_count * 1e3:>14.3f} "
                  f"{t_solve * 1e3:>12.3f} {speed:>8}")
        print(f"{'':>8} lowest eigenvalues: "
              + ", ".join(f"{v:.8g}" for v in values[: args.count]))


if __name__ == "__main__":
    main()
