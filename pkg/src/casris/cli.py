"""Batch command-line front-end.

Three non-interactive commands:

* ``run`` executes a sweep described by a YAML config and writes a CSV,
  a text report, and optionally a figure.
* ``nreq`` inverts the large-N capacity law: given a rate target it
  prints the continuous and integer per-surface element counts plus the
  capacity check at the integer count.
* ``validate`` runs the built-in validation suite and writes its report.

Exit codes: 0 success; 2 usage or config-schema errors; 3 domain
failures (infeasible sizing target, failed validation checks).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .analysis import ec_high_snr_large_n, large_n_capacity, n_required
from .channel import SystemConfig
from .experiment import SchemaError, load_config, run_experiment, write_text

__all__ = ["main", "build_parser"]

_USAGE_EXIT = 2
_DOMAIN_EXIT = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casris",
        description="Cascaded reconfigurable-surface capacity experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a sweep from a config file")
    run.add_argument("--config", required=True, help="YAML experiment config")
    run.add_argument("--seed", type=int, default=None,
                     help="override the config's master seed")
    run.add_argument("--trials", type=int, default=None,
                     help="override the config's trials per point")
    run.add_argument("--workers", type=int, default=1,
                     help="parallel workers (never changes results)")
    run.add_argument("--out-dir", default=".", help="output directory")
    run.add_argument("--plot", action="store_true",
                     help="also render a figure (even if the config names none)")

    nreq = sub.add_parser(
        "nreq", help="per-surface element count for a rate target"
    )
    nreq.add_argument("--target", type=float, required=True,
                      help="target capacity in bits/s/Hz")
    nreq.add_argument("--tx-antennas", type=int, required=True)
    nreq.add_argument("--users", type=int, required=True)
    nreq.add_argument("--ris-count", type=int, required=True)
    nreq.add_argument("--power", type=float, required=True,
                      help="transmit power budget")
    nreq.add_argument("--noise-var", type=float, default=1.0)

    val = sub.add_parser("validate", help="run the built-in validation suite")
    val.add_argument("--seed", type=int, default=None,
                     help="master seed (default: the suite's reference seed)")
    val.add_argument("--trials", type=int, default=None,
                     help="override reference sample counts (smoke mode)")
    val.add_argument("--workers", type=int, default=1)
    val.add_argument("--out-dir", default=".",
                     help="directory for the validation report")
    return parser


def _cmd_run(args) -> int:
    try:
        config = load_config(args.config)
    except SchemaError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return _USAGE_EXIT
    bundle = run_experiment(
        config,
        out_dir=Path(args.out_dir),
        workers=args.workers,
        seed=args.seed,
        trials=args.trials,
        plot=args.plot,
    )
    print(f"csv: {bundle.csv_path}")
    print(f"report: {bundle.report_path}")
    if bundle.plot_path is not None:
        print(f"plot: {bundle.plot_path}")
    return 0


def _cmd_nreq(args) -> int:
    try:
        config = SystemConfig(
            tx_antennas=args.tx_antennas,
            users=args.users,
            ris_count=args.ris_count,
            ris_sizes=(1,) * args.ris_count,
            power_budget=args.power,
            noise_var=args.noise_var,
        )
    except ValueError as exc:
        print(f"invalid system: {exc}", file=sys.stderr)
        return _USAGE_EXIT
    try:
        sizing = n_required(args.target, config)
    except ValueError as exc:
        # message includes the minimum achievable power-term capacity
        print(f"infeasible: {exc}", file=sys.stderr)
        return _DOMAIN_EXIT

    roundtrip = large_n_capacity(
        config.tx_antennas, config.users, config.ris_count,
        config.power_budget, config.noise_var, sizing.n_required,
    )
    integer_cfg = replace(config, ris_sizes=(sizing.n_required_ceil,)
                          * config.ris_count)
    achieved = ec_high_snr_large_n(integer_cfg).value_bits
    print(f"target capacity: {sizing.target_capacity:.6f} bits/s/Hz")
    print(f"elements per surface (continuous): {sizing.n_required:.6f}")
    print(f"elements per surface (integer): {sizing.n_required_ceil}")
    print(f"roundtrip capacity at the continuous count: {roundtrip:.6f} "
          f"(error {abs(roundtrip - sizing.target_capacity):.2e})")
    print(f"capacity at the integer count: {achieved:.6f}")
    return 0


def _cmd_validate(args) -> int:
    from .validation import DEFAULT_SEED, run_validation

    seed = args.seed if args.seed is not None else DEFAULT_SEED
    suite = run_validation(seed=seed, trials=args.trials, workers=args.workers)
    text = suite.report_text()
    print(text, end="")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = write_text(text, out_dir / "validation_report.txt")
    print(f"report written to {report_path}")
    return 0 if suite.passed else _DOMAIN_EXIT


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "nreq":
        return _cmd_nreq(args)
    return _cmd_validate(args)


if __name__ == "__main__":
    sys.exit(main())
