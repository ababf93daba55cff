"""Command-line entry point.

Subcommands
    sweep CONFIG        run a disorder sweep, emit one CSV row per ratio
    scatter CONFIG      per-eigenstate dump at one ratio (--ratio)
    spectrum CONFIG     raw sector eigenvalues at one ratio (--ratio)
    baseline            analytic vs Monte-Carlo purity/NPC reference table

Exit codes: 0 success, 2 configuration error, 3 numerical failure.  The
worker-thread count comes from --threads or the SPINCHAOS_THREADS
environment variable (default 1).
"""
from __future__ import annotations

import argparse
import os
import sys

from . import harness
from .errors import ConfigError, NumericalError, StatisticsError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
THREADS_ENV = "SPINCHAOS_THREADS"


def _add_overrides(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("config", help="YAML sweep configuration file")
    parser.add_argument("--realizations", type=int, help="override the realization count")
    parser.add_argument("--master-seed", type=int, help="override the master seed")
    parser.add_argument("--ratios", help="override the ratio grid (comma separated)")
    parser.add_argument("--sector", choices=harness.SECTOR_MODES, help="override the sector mode")
    parser.add_argument("--law", choices=("uniform", "gaussian"), help="override the disorder law")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinchaos",
        description="Level statistics, delocalization, and entanglement "
        "diagnostics for disordered spin lattices.",
    )
    parser.add_argument(
        "--threads", type=int, default=None,
        help=f"worker threads (default: ${THREADS_ENV} or 1)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="ensemble sweep over a disorder-ratio grid")
    _add_overrides(p)
    p.add_argument("--out", default="sweep.csv", help="output CSV path")

    p = sub.add_parser("scatter", help="per-eigenstate diagnostics at one ratio")
    _add_overrides(p)
    p.add_argument("--ratio", type=float, required=True)
    p.add_argument("--out", default="scatter.csv", help="output CSV path")

    p = sub.add_parser("spectrum", help="raw sector eigenvalues at one ratio")
    _add_overrides(p)
    p.add_argument("--ratio", type=float, required=True)
    p.add_argument("--out", default="spectrum.csv", help="output CSV path")

    p = sub.add_parser("baseline", help="analytic vs Monte-Carlo reference table")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=902_100)
    p.add_argument("--sites", type=int, default=12)
    p.add_argument("--out", help="also write the table as CSV")
    return parser


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get(THREADS_ENV, "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {env!r}") from None


def _overrides(args) -> dict:
    out = {
        "realizations": args.realizations,
        "master_seed": args.master_seed,
        "sector": args.sector,
        "disorder_law": args.law,
    }
    if args.ratios is not None:
        out["ratios"] = [float(x) for x in args.ratios.split(",") if x.strip()]
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        threads = _threads(args)
        if args.command == "sweep":
            config = harness.load_config(args.config, **_overrides(args))
            rows = harness.run_sweep(config, threads=threads)
            harness.write_sweep_csv(args.out, rows)
            print(f"wrote {len(rows)} rows to {args.out} [config {rows[0].config_hash}]")
        elif args.command == "scatter":
            config = harness.load_config(args.config, **_overrides(args))
            table = harness.run_scatter(config, args.ratio)
            harness.write_scatter_csv(args.out, table)
            print(f"wrote {len(table.rows)} eigenstate rows to {args.out} "
                  f"[config {table.config_hash}]")
        elif args.command == "spectrum":
            config = harness.load_config(args.config, **_overrides(args))
            dump = harness.run_spectrum(config, args.ratio)
            harness.write_spectrum_csv(args.out, dump)
            nlev = sum(len(e) for e in dump.energies)
            print(f"wrote {nlev} levels to {args.out} [config {dump.config_hash}]")
        elif args.command == "baseline":
            report = harness.run_baseline(samples=args.samples, seed=args.seed, L=args.sites)
            print(harness.format_baseline(report))
            if args.out:
                harness.write_baseline_csv(args.out, report)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, StatisticsError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
