"""Command-line entry point.

    adr-oaa list
    adr-oaa run <experiment> [--config cfg.json] [--out rows.csv] [--seed N] [--encoder lcu|dilation]
    adr-oaa oracle-check --config cfg.json

Exit codes: 0 success, 2 configuration error, 3 oracle mismatch, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .config import REGISTRY, ConfigError, default_config, load_config, with_overrides
from .experiments import compare_oracle, run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ORACLE = 3
EXIT_IO = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="adr-oaa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", help="print the experiment registry")

    p_run = sub.add_parser("run", help="run one experiment and write its CSV")
    p_run.add_argument("experiment", choices=sorted(REGISTRY))
    p_run.add_argument("--config", help="JSON config file (missing keys take registry defaults)")
    p_run.add_argument("--out", help="CSV output path (overrides output_path)")
    p_run.add_argument("--seed", type=_u64, help="base seed for Haar-random initial states")
    p_run.add_argument("--encoder", choices=("lcu", "dilation"))

    p_chk = sub.add_parser("oracle-check", help="compare exact references with the classical stepper")
    p_chk.add_argument("--config", required=True)
    p_chk.add_argument("--quiet", action="store_true", help="only print failures and the tally")
    return parser


def _cmd_list() -> int:
    width = max(map(len, REGISTRY))
    for name, (desc, _) in REGISTRY.items():
        print(f"{name:<{width}}  {desc}")
    return EXIT_OK


def _cmd_run(args) -> int:
    cfg = load_config(args.config, args.experiment) if args.config else default_config(args.experiment)
    cfg = with_overrides(cfg, seed=args.seed, encoder=args.encoder, output_path=args.out)
    run(cfg)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    cfg = load_config(args.config)
    checks = compare_oracle(cfg)
    failed = 0
    for chk in checks:
        r = chk.row
        if not chk.passed:
            failed += 1
        if not chk.passed or not args.quiet:
            status = "PASS" if chk.passed else "FAIL"
            print(
                f"{status} strategy={r.strategy} t_scale={r.t_scale:g} gamma_r={r.gamma_r:g} "
                f"state={r.state_id} k={r.k} err={chk.error:.2e}"
            )
    print(f"{len(checks) - failed}/{len(checks)} rows match the classical oracle")
    return EXIT_ORACLE if failed else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list":
            return _cmd_list()
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_oracle(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
