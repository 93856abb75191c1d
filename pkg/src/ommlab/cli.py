"""Command line front end.

Subcommands: run, experiment, fit, plot.  Exit codes: 0 on success, 1 on a
usage/configuration error, 2 when --strict-invariants catches a violation.

Configuration may come from a JSON file with the same key names as the
flags (--config); explicit flags override file values.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields
from fractions import Fraction

from .harness import (
    RunConfig,
    fit_scaling,
    read_experiment,
    run_experiment,
    run_single,
    write_trace,
)
from .instrumentation import InvariantViolation
from .plots import emit_plot


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


_CONFIG_KEYS = {f.name for f in fields(RunConfig)}


def _config_from(file_values: dict, args: argparse.Namespace) -> RunConfig:
    values = {k: v for k, v in file_values.items() if k in _CONFIG_KEYS}
    unknown = set(file_values) - _CONFIG_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    if "stop_at_coverage" in values:
        values["stop_at_coverage"] = Fraction(str(values["stop_at_coverage"]))
    return RunConfig(**values)


def _add_run_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--algo", choices=["nsga3", "nsga2"])
    sub.add_argument("--m", type=int)
    sub.add_argument("--n", type=int)
    sub.add_argument("--mu", type=int)
    sub.add_argument("--p", type=int)
    sub.add_argument("--eps-nad", dest="eps_nad", type=float)
    sub.add_argument("--seed", type=int)
    sub.add_argument("--max-gens", dest="max_gens", type=int)
    sub.add_argument("--trace-every", dest="trace_every", type=int)
    sub.add_argument("--stop-at-coverage", dest="stop_at_coverage", type=str)
    sub.add_argument(
        "--strict-invariants", dest="strict_invariants",
        action="store_const", const=True,
    )
    sub.add_argument("--config", help="JSON file with RunConfig keys")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ommlab")
    subs = parser.add_subparsers(dest="command", required=True)

    run = subs.add_parser("run", help="single seeded run")
    _add_run_flags(run)
    run.add_argument("--trace-out", help="write the per-generation trace CSV")

    exp = subs.add_parser("experiment", help="grid of runs from a config file")
    exp.add_argument("--config", required=True,
                     help='JSON file: {"grid": [RunConfig...], "reps": k}')
    exp.add_argument("--reps", type=int)
    exp.add_argument("--seed", type=int, help="master seed")
    exp.add_argument("--jobs", type=int, default=1)
    exp.add_argument("--out", required=True)

    fit = subs.add_parser("fit", help="scaling regression over an experiment CSV")
    fit.add_argument("table")
    fit.add_argument("--model", choices=["n_pow", "n_log_n_over_mu"],
                     default="n_pow")

    plot = subs.add_parser("plot", help="emit an SVG from a CSV")
    plot.add_argument("table")
    plot.add_argument("--kind", choices=["scaling", "beta_trace", "coverage_trace"],
                      required=True)
    plot.add_argument("--out", required=True)
    return parser


def _cmd_run(args) -> int:
    file_values = {}
    if args.config:
        with open(args.config) as fh:
            file_values = json.load(fh)
    config = _config_from(file_values, args)
    result = run_single(config)
    if args.trace_out:
        write_trace(result.trace, args.trace_out)
    status = "capped" if result.capped else "covered"
    print(
        f"algo={result.config.algo} n={result.config.n} mu={result.config.mu} "
        f"seed={result.config.seed} generations={result.generations} "
        f"status={status} fitness_evals={result.fitness_evaluations} "
        f"final_beta={result.final_beta} wall_ms={result.wall_ms:.1f}"
    )
    return 0


def _cmd_experiment(args) -> int:
    with open(args.config) as fh:
        doc = json.load(fh)
    grid = [_config_from(entry, argparse.Namespace()) for entry in doc["grid"]]
    reps = args.reps if args.reps is not None else int(doc.get("reps", 1))
    master_seed = args.seed if args.seed is not None else int(doc.get("seed", 0))
    run_experiment(grid, reps, master_seed, args.out, jobs=args.jobs)
    print(f"wrote {args.out}: {len(grid)} configs x {reps} repetitions")
    return 0


def _cmd_fit(args) -> int:
    fit = fit_scaling(read_experiment(args.table), args.model)
    print(
        f"model={fit['model']} exponent={fit['exponent']:.4f} "
        f"r_squared={fit['r_squared']:.4f} points={fit['points']}"
    )
    return 0


def _cmd_plot(args) -> int:
    emit_plot(read_experiment(args.table), args.kind, args.out)
    print(f"wrote {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "run": _cmd_run,
        "experiment": _cmd_experiment,
        "fit": _cmd_fit,
        "plot": _cmd_plot,
    }[args.command]
    try:
        return handler(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
