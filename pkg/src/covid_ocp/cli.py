"""Command-line interface.

Verbs: ``run``, ``replay``, ``validate-config``, ``print-r0``.
Exit codes: 0 success, 1 config error, 2 numeric failure,
3 success with a non-convergence warning.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import runner
from .config import load_config
from .errors import ConfigError, NumericalError
from .model import compute_r0
from .report import render_reports


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", metavar="PATH", help="INI or JSON config (defaults fill missing keys)")


def _selection(args) -> str | None:
    parts = []
    if getattr(args, "strategy", None):
        parts.append(args.strategy)
    if getattr(args, "scenario", None):
        parts.append(args.scenario)
    return ",".join(parts) if parts else None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="covid-ocp", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="solve strategies and run the cost-effectiveness analysis")
    _add_common(p)
    p.add_argument("--strategy", metavar="N[,N...]", help="strategy ids 1-14")
    p.add_argument("--scenario", metavar="A|B|C|D|all", help="scenario letter(s) or 'all'")
    p.add_argument("--replay", metavar="CSV", help="replay tabulated records instead of solving")
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--format", choices=("csv", "json", "both"))
    p.add_argument("--workers", type=int, metavar="N")

    p = sub.add_parser("replay", help="run the CEA on a CSV of strategy_id,infections_averted,cost,recoveries")
    p.add_argument("records", metavar="CSV")
    p.add_argument("--out", metavar="DIR", default="results")
    p.add_argument("--format", choices=("csv", "json", "both"), default="both")

    p = sub.add_parser("validate-config", help="check a config file without solving")
    _add_common(p)
    p.add_argument("--strategy")
    p.add_argument("--scenario")

    p = sub.add_parser("print-r0", help="print the basic reproduction number for the configured parameters")
    _add_common(p)
    return parser


def _cmd_run(args) -> int:
    if args.replay:
        return _cmd_replay(argparse.Namespace(records=args.replay, out=args.out or "results",
                                              format=args.format or "both"))
    config = load_config(args.config, strategies=_selection(args), out_dir=args.out, fmt=args.format,
                         workers=args.workers)
    result = runner.run(config)
    for sid, s in result.summaries.items():
        flag = "" if s.converged else "  (NOT CONVERGED)"
        print(f"strategy {sid:2d}: J={s.objective_J:.6g} averted={s.infections_averted:.6g} "
              f"cost={s.total_cost:.6g} iterations={s.iterations}{flag}")
    if result.reports:
        print(render_reports(result.reports), end="")
    print(f"wrote {len(result.files)} files to {config.out_dir}")
    return result.exit_code


def _cmd_replay(args) -> int:
    reports = runner.replay(args.records, args.out, args.format)
    print(render_reports(reports), end="")
    return runner.EXIT_OK


def _cmd_validate(args) -> int:
    config = load_config(args.config, strategies=_selection(args))
    print(f"config OK: {len(config.strategies)} strategies, T={config.sweep.t_final:g} days, "
          f"n_steps={config.sweep.n_steps}")
    return runner.EXIT_OK


def _cmd_r0(args) -> int:
    config = load_config(args.config)
    print(f"{compute_r0(config.params):.10g}")
    return runner.EXIT_OK


COMMANDS = {"run": _cmd_run, "replay": _cmd_replay, "validate-config": _cmd_validate, "print-r0": _cmd_r0}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return runner.EXIT_CONFIG
    except NumericalError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return runner.EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
