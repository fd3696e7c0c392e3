"""Command line entry point: ``graphheat {pipeline,proptest,spectrum,info}``.

Exit codes: 0 on success, 1 when an image fails or a property check is
violated, 2 on invalid configuration.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import _kernels
from .bench import FORWARD_SOLVERS, METHODS, PipelineConfig, emit_tables, run_pipeline
from .diffusion import count_admissible, select_m_eps
from .errors import ConfigurationError, GraphHeatError
from .graph import GridSpec, grid_graph, laplacian, read_edgelist
from .proptest import SCALES, run_property_suite
from .spectral import eigendecompose_dense, eigendecompose_grid, write_spectrum_csv

EXIT_OK, EXIT_FAILURE, EXIT_CONFIG = 0, 1, 2


def _add_graph_args(p):
    p.add_argument("--rows", type=int, default=128)
    p.add_argument("--cols", type=int, default=128)
    p.add_argument("--edgelist", help="read the graph from an 'n m' + 'i j' edge-list file instead of a grid")
    p.add_argument("--solver", choices=("auto", "grid", "dense"), default="auto",
                   help="eigendecomposition route (auto: closed form for grids, dense otherwise)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphheat", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pipeline", help="denoise images and tabulate PSNR and timings")
    p.add_argument("inputs", nargs="+", help="PGM images (P2 or P5)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--rows", type=int, default=128)
    p.add_argument("--cols", type=int, default=128)
    p.add_argument("--sigma-noise", type=float, default=20.0)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--T", type=float, default=0.5, dest="T")
    p.add_argument("--courant", type=float, default=0.03)
    p.add_argument("--method", choices=METHODS, default="both")
    p.add_argument("--forward", choices=FORWARD_SOLVERS, default="euler")
    p.add_argument("--repeats", type=int, default=5, help="timing repetitions; the fastest is reported")
    p.add_argument("--outdir", default="results")

    p = sub.add_parser("proptest", help="run the randomised error-bound checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", choices=sorted(SCALES), default="small")
    p.add_argument("--trials", type=int, default=1000)

    p = sub.add_parser("spectrum", help="write 'index,eigenvalue' CSV")
    _add_graph_args(p)
    p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("info", help="graph and eigenvalue statistics")
    _add_graph_args(p)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--T", type=float, default=0.5, dest="T")
    return parser


def _basis_for(args):
    if args.edgelist:
        if args.solver == "grid":
            raise ConfigurationError("--solver grid needs --rows/--cols, not an edge list")
        g = read_edgelist(args.edgelist)
        return g, eigendecompose_dense(laplacian(g))
    spec = GridSpec(args.rows, args.cols)
    g = grid_graph(spec)
    if args.solver == "dense":
        return g, eigendecompose_dense(laplacian(g))
    return g, eigendecompose_grid(spec)


def cmd_pipeline(args) -> int:
    cfg = PipelineConfig(
        inputs=args.inputs, seed=args.seed, rows=args.rows, cols=args.cols,
        sigma_noise=args.sigma_noise, epsilon=args.epsilon, gamma=args.gamma, T=args.T,
        courant=args.courant, method=args.method, outdir=args.outdir, forward=args.forward,
        repeats=args.repeats,
    )
    result = run_pipeline(cfg)
    if result.records:
        print(emit_tables(result.records)[1], end="")
        print(f"basis setup: {result.basis_time:.6f} s; outputs in {args.outdir}")
    for path, reason in result.failures.items():
        print(f"FAILED {path}: {reason}", file=sys.stderr)
    return EXIT_FAILURE if result.failures else EXIT_OK


def cmd_proptest(args) -> int:
    report = run_property_suite(args.seed, args.scale, args.trials)
    print(json.dumps(report.as_dict(), indent=2))
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_spectrum(args) -> int:
    _, basis = _basis_for(args)
    write_spectrum_csv(basis, args.out if args.out else sys.stdout)
    return EXIT_OK


def cmd_info(args) -> int:
    g, basis = _basis_for(args)
    params = select_m_eps(args.epsilon, args.gamma, args.T, basis.lambda_max)
    info = {
        "vertices": g.n,
        "edges": g.num_edges,
        "eigen_source": basis.source,
        "lambda_max": basis.lambda_max,
        "eigenvalue_sum": float(basis.eigenvalues.sum()),
        "m_eps": params.m_eps,
        "m_eps_capped": params.capped,
        "modes_retained": count_admissible(basis, params.m_eps),
        "kernel_backend": _kernels.backend(),
    }
    print(json.dumps(info, indent=2))
    return EXIT_OK


COMMANDS = {"pipeline": cmd_pipeline, "proptest": cmd_proptest, "spectrum": cmd_spectrum, "info": cmd_info}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ConfigurationError, ValueError, OSError) as exc:
        print(f"graphheat: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GraphHeatError as exc:
        print(f"graphheat: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
