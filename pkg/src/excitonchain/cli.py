"""Command-line interface.

Subcommands compute and serialize one artifact family each:

    excitonchain modes            --config run.yaml --out results
    excitonchain pattern          --config run.yaml --format json
    excitonchain trace            --config run.yaml --threads 4
    excitonchain scenario-two-seg --config run.yaml
    excitonchain --check

Exit codes: 0 success, 1 configuration error, 2 computation error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, load_config
from .emission import GeometryError
from .runner import run
from .selfcheck import run_selfcheck

__all__ = ["main", "entry"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="excitonchain",
        description="Collective-excitation optics of finite atom chains",
    )
    parser.add_argument(
        "--check", action="store_true",
        help="run the internal invariant suite and exit",
    )
    sub = parser.add_subparsers(dest="command")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="YAML run configuration")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads for independent observation points")
    sub.add_parser("modes", parents=[common],
                   help="mode table: energies, dipoles, damping rates")
    sub.add_parser("pattern", parents=[common],
                   help="angular emission pattern of one mode")
    sub.add_parser("trace", parents=[common],
                   help="time-resolved intensity with per-term decomposition")
    sub.add_parser("scenario-two-seg", parents=[common],
                   help="two-segment benchmark: exact and far-zone traces, beats")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.check:
        return 0 if run_selfcheck() else 2
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 1

    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    try:
        written = run(
            cfg,
            args.out,
            fmt=args.format,
            threads=args.threads,
            tasks=(args.command,),
        )
    except (GeometryError, ValueError, ArithmeticError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    for path in written:
        print(path)
    return 0


def entry() -> None:
    sys.exit(main())
