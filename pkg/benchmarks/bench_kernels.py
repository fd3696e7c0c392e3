"""Compare the compiled and numpy kernel backends.

Times the dense eigensolver (tred2 + tql2) on random-graph Laplacians and
the explicit Euler forward flow on a 128x128 grid, reports the fastest of
several repeats for each backend, and checks both backends agree.

    python3 benchmarks/bench_kernels.py [--repeats 5] [--sizes 64 128 256]
"""

import argparse
import time
import warnings

import numpy as np

from graphheat import _kernels
from graphheat.diffusion import EulerConfig, forward_euler
from graphheat.graph import GridSpec, grid_graph, laplacian, random_graph
from graphheat.spectral import eigendecompose_dense


def best_of(fn, repeats):
    best, out = float("inf"), None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def bench(label, fn, repeats, compare):
    times, outs = {}, {}
    for name in _kernels.BACKENDS:
        with _kernels.use_backend(name):
            outs[name], times[name] = best_of(fn, repeats)
    diff = compare(outs["python"], outs["cython"]) if len(outs) == 2 else float("nan")
    py, cy = times["python"], times.get("cython", float("nan"))
    print(f"{label:<28} {py:>10.4f} {cy:>10.4f} {py / cy:>8.1f}x {diff:>10.1e}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--grid", type=int, default=128)
    args = ap.parse_args(argv)

    if not _kernels.CYTHON_AVAILABLE:
        print("compiled kernels not built; only the numpy backend is timed")
    print(f"{'kernel':<28} {'python s':>10} {'cython s':>10} {'speedup':>9} {'max diff':>10}")

    for n in args.sizes:
        g = random_graph(n, 0.1, np.random.default_rng(n))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            L = laplacian(g)
        bench(f"dense eigensolve n={n}", lambda: eigendecompose_dense(L).eigenvalues, args.repeats,
              lambda a, b: float(np.abs(a - b).max()))

    spec = GridSpec(args.grid, args.grid)
    L = laplacian(grid_graph(spec))
    u0 = np.random.default_rng(0).uniform(0, 255, spec.n)
    cfg = EulerConfig()
    bench(f"euler {args.grid}x{args.grid}, {cfg.steps} steps", lambda: forward_euler(L, u0, cfg), args.repeats,
          lambda a, b: float(np.abs(a - b).max()))
    bench(f"laplacian matvec {args.grid}x{args.grid}", lambda: L @ u0, max(args.repeats, 20),
          lambda a, b: float(np.abs(a - b).max()))


if __name__ == "__main__":
    main()
