"""Command-line experiment runner.

Subcommands: ``bench-poly`` and ``bench-array`` reproduce the closed-form
benchmark studies; ``analyze <dataset>`` runs the sampled-system workflow on
an external I/O file, using ``--validation`` samples as the reference band.
"""

from __future__ import annotations

import argparse
import sys

from .dataset import read_dataset
from .experiment import ExperimentConfig, emit, run_benchmark, run_external


def _add_common(parser: argparse.ArgumentParser, default_n: int) -> None:
    parser.add_argument("--n", type=int, default=default_n, help="number of uncertain parameters")
    parser.add_argument("--s", type=int, default=None, help="training samples (default 6*N)")
    parser.add_argument("--k", type=int, default=None, help="response grid size (benchmark default)")
    parser.add_argument("--delta", type=float, default=0.20, help="relative tolerance, e.g. 0.2 for 20%%")
    parser.add_argument("--m", type=int, default=10_000, help="Monte Carlo realizations")
    parser.add_argument("--l", type=int, default=100, help="training repeats for min-delta selection")
    parser.add_argument("--seed", type=int, default=0, help="experiment seed")
    parser.add_argument(
        "--beta-mode", choices=("shared", "per-k"), default="shared",
        help="correlation-rate mode: one shared rate vector, or optimized per grid sample",
    )
    parser.add_argument(
        "--beta-objective", choices=("calibrated", "likelihood", "loo"), default="calibrated",
        help="rate policy: calibrated default, or an optimization criterion",
    )
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--plotdata", action="store_true", help="also write per-figure series files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="krigbounds",
        description="Worst-case response bounds for sampled systems via interval-extended kriging",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    poly = sub.add_parser("bench-poly", help="polynomial benchmark study")
    _add_common(poly, default_n=1)

    array = sub.add_parser("bench-array", help="linear-array power-pattern study")
    _add_common(array, default_n=10)
    array.add_argument("--delta", type=float, default=0.01, help="relative tolerance")
    array.add_argument("--sll-db", type=float, default=-20.0, help="nominal sidelobe level in dB")
    array.add_argument("--spacing", type=float, default=0.5, help="element spacing over wavelength")

    analyze = sub.add_parser("analyze", help="external dataset workflow")
    analyze.add_argument("dataset", help="training sample file")
    analyze.add_argument("--validation", required=True, help="held-out sample file for the reference band")
    _add_common(analyze, default_n=1)
    return parser


def _config_from_args(args: argparse.Namespace, kind: str) -> ExperimentConfig:
    return ExperimentConfig(
        kind=kind,
        n_params=args.n,
        n_train=args.s,
        grid_size=args.k,
        delta=args.delta,
        mc_draws=args.m,
        repeats=args.l,
        seed=args.seed,
        beta_mode=args.beta_mode,
        beta_objective=args.beta_objective,
        sll_db=getattr(args, "sll_db", -20.0),
        spacing_over_lambda=getattr(args, "spacing", 0.5),
        dataset_path=getattr(args, "dataset", None),
        validation_path=getattr(args, "validation", None),
        out_dir=args.out,
        plotdata=args.plotdata,
    )


def _print_summary(result) -> None:
    report = result.report_lbe
    print(f"psi_ia_lbe={report.psi:.6g} (int={report.psi_int:.6g}, ext={report.psi_ext:.6g}, pen={report.psi_pen:.6g})")
    if result.report_e is not None:
        print(f"psi_ia_e={result.report_e.psi:.6g}")
    print(f"delta_ia_lbe={result.delta_lbe:.6g}" + (f" delta_ia_e={result.delta_e:.6g}" if result.delta_e is not None else ""))
    print(f"runtime_seconds={result.runtime_seconds:.3f}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    kind = {"bench-poly": "poly", "bench-array": "array", "analyze": "external"}[args.command]

    stage = "configuration"
    try:
        config = _config_from_args(args, kind)
        if kind == "external":
            stage = "ingest"
            dataset = read_dataset(config.dataset_path)
            config.n_params = dataset.n_params
            stage = "analysis"
            result = run_external(config, dataset)
        else:
            stage = "benchmark run"
            result = run_benchmark(config)
        stage = "emit"
        paths = emit(result, config.out_dir)
    except Exception as err:  # noqa: BLE001 - single reporting point for the CLI
        print(f"error during {stage}: {err}", file=sys.stderr)
        return 1

    _print_summary(result)
    print(f"wrote {paths['bounds']} and {paths['metrics']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
