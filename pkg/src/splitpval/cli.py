"""Command-line front end: ``simulate``, ``analyze``, and ``power-curves``.

All configuration is explicit (flags only, no environment variables), every
run is deterministic given its flags, and outputs are written as paired
records/summary text files.  Exit status is 0 on success and nonzero with a
diagnostic on stderr for any error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .datamodel import SplitError
from .matrixio import MatrixParseError, read_labels, read_matrix
from .pipeline import AnalysisConfig, analyze_matrix
from .power import region_boundary
from .reports import write_discovery_report, write_power_curves, write_simulation_report
from .simulation import WeightMode, config_grid, run_study

__all__ = ["build_parser", "main"]


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _alpha_grid(text: str) -> list[float]:
    """Comma list, or start:stop:step (inclusive stop, to float fuzz)."""
    if ":" in text:
        start, stop, step = (float(tok) for tok in text.split(":"))
        n = int(round((stop - start) / step))
        return [round(start + i * step, 12) for i in range(n + 1)]
    return _floats(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitpval",
        description="Compound p-values from data splits, with BH and q-value FDR procedures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="Monte Carlo power/FDR study on a parameter grid")
    sim.add_argument("--theta", default="2", help="comma list of signal locations")
    sim.add_argument("--tau", default="0", help="comma list of signal spreads")
    sim.add_argument("--lambda2", default="0.01", help="comma list of training fractions in (0,1)")
    sim.add_argument("--M", type=int, default=5000, help="hypotheses per replicate")
    sim.add_argument("--M1", type=int, default=1000, help="false nulls per replicate")
    sim.add_argument("--K", type=int, default=200, help="replicates per configuration")
    sim.add_argument("--alpha", type=float, default=0.05, help="procedure level")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--lambda-s", type=float, default=0.5, dest="lambda_s",
                     help="q-value null-proportion tuning value")
    sim.add_argument("--eps-multiples", default="1,2",
                     help="band half-widths for the estimated-p compound families, "
                          "as multiples of the training-statistic null SD")
    sim.add_argument("--fixed-p", default="1",
                     help="comma list of fixed mixing proportions (empty to disable)")
    sim.add_argument("--out", required=True, help="output prefix (writes PREFIX.records.txt "
                                                  "and PREFIX.summary.txt)")

    ana = sub.add_parser("analyze", help="two-group analysis of a delimited data matrix")
    ana.add_argument("--data", required=True, help="delimited matrix, rows = features")
    ana.add_argument("--labels", required=True, help="file of N group labels (1 or 2)")
    split_group = ana.add_mutually_exclusive_group(required=True)
    split_group.add_argument("--train-cols", help="explicit 1-based training column indices, "
                                                  "comma separated")
    split_group.add_argument("--train-fraction", type=float,
                             help="training fraction for a random split")
    ana.add_argument("--eps", default="1,2", help="band half-widths for estimated-p families")
    ana.add_argument("--fixed-p", default="0.1,1", help="fixed mixing proportions")
    ana.add_argument("--alphas", default="0.01:0.2:0.01",
                     help="comma list or start:stop:step of procedure levels")
    ana.add_argument("--procedures", default="BH,QVALUE")
    ana.add_argument("--lambda-s", type=float, default=0.5, dest="lambda_s")
    ana.add_argument("--seed", type=int, default=0)
    ana.add_argument("--out", required=True, help="output prefix")

    pc = sub.add_parser("power-curves", help="oracle-advantage region boundary per size eta")
    pc.add_argument("--etas", default="0.01,0.001,0.0001,0.00001")
    pc.add_argument("--mu-min", type=float, default=-3.0)
    pc.add_argument("--mu-max", type=float, default=3.0)
    pc.add_argument("--mu-points", type=int, default=50)
    pc.add_argument("--out", required=True, help="output path (TSV)")
    return parser


def _cmd_simulate(args) -> int:
    modes = [WeightMode("epsilon", m) for m in _floats(args.eps_multiples)]
    modes += [WeightMode("fixed", p) for p in _floats(args.fixed_p)]
    configs = config_grid(
        _floats(args.theta),
        _floats(args.tau),
        _floats(args.lambda2),
        M=args.M,
        M1=args.M1,
        K=args.K,
        alpha=args.alpha,
        seed=args.seed,
        qvalue_lambda_s=args.lambda_s,
        weight_modes=tuple(modes),
    )
    report = run_study(configs)
    write_simulation_report(report, f"{args.out}.records.txt", f"{args.out}.summary.txt")
    print(f"wrote {args.out}.records.txt and {args.out}.summary.txt")
    return 0


def _cmd_analyze(args) -> int:
    matrix = read_matrix(args.data)
    labels = read_labels(args.labels, matrix.n_cols)
    training_cols = None
    if args.train_cols:
        one_based = [int(tok) for tok in args.train_cols.split(",") if tok.strip()]
        for c in one_based:
            if not 1 <= c <= matrix.n_cols:
                raise SplitError(f"training column {c} out of range 1..{matrix.n_cols}")
        training_cols = tuple(c - 1 for c in one_based)
    config = AnalysisConfig(
        data_path=args.data,
        labels_path=args.labels,
        training_cols=training_cols,
        train_fraction=args.train_fraction,
        epsilons=tuple(_floats(args.eps)),
        fixed_ps=tuple(_floats(args.fixed_p)),
        procedures=tuple(tok.strip().upper() for tok in args.procedures.split(",") if tok.strip()),
        alphas=tuple(_alpha_grid(args.alphas)),
        qvalue_lambda_s=args.lambda_s,
        seed=args.seed,
    )
    report = analyze_matrix(matrix, labels, config)
    write_discovery_report(report, f"{args.out}.records.txt", f"{args.out}.summary.txt")
    skipped = [f.label for f in report.families if f.skipped]
    if skipped:
        print(f"skipped families: {', '.join(skipped)}")
    print(f"wrote {args.out}.records.txt and {args.out}.summary.txt")
    return 0


def _cmd_power_curves(args) -> int:
    if args.mu_points < 2:
        raise ValueError("need at least 2 grid points")
    grid = np.linspace(args.mu_min, args.mu_max, args.mu_points)
    grid = grid[np.abs(grid) > 1e-12]
    curves = {eta: (grid, region_boundary(grid, eta)) for eta in _floats(args.etas)}
    write_power_curves(curves, args.out)
    print(f"wrote {args.out}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "analyze":
            return _cmd_analyze(args)
        return _cmd_power_curves(args)
    except (MatrixParseError, SplitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
