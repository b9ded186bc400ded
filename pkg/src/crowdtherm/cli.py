"""Command-line interface: simulate, ensemble, check.

Exit codes: 0 success, 1 configuration or validation error, 2 runtime abort
(non-finite state), 3 check-suite failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .checks import run_checks
from .config import ConfigError, RunMetadata, build, parse_pairs
from .diagnostics import series
from .ensemble import EnsembleRunError, run_ensemble
from .integrator import GENERATOR_NAME, SCHEME_NAME, NonFiniteStateError, simulate
from .model import validate
from .output import (
    emit_ensemble_csv,
    emit_run_csv,
    write_ensemble_plot_scripts,
    write_run_plot_scripts,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2
EXIT_CHECK = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crowdtherm",
        description="First-order nonlocal crowd simulation with entropy diagnostics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", type=Path, help="key=value configuration file")
        p.add_argument("--sigma", type=float, help="override the anisotropy parameter")
        p.add_argument("--n", type=int, help="override the particle count")
        p.add_argument("--dt", type=float, help="override the time step")
        p.add_argument("--t-final", type=float, help="override the final time")
        p.add_argument("--seed", type=int, help="override the base seed")

    sim = sub.add_parser("simulate", help="one run: CSV, metadata, figure scripts")
    add_common(sim)
    sim.add_argument("--out", type=Path, required=True, help="output directory")

    ens = sub.add_parser("ensemble", help="multi-run envelopes: CSV, metadata, figure scripts")
    add_common(ens)
    ens.add_argument("--out", type=Path, required=True, help="output directory")
    ens.add_argument("--runs", type=int, default=100, help="number of runs (default 100)")
    ens.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")

    chk = sub.add_parser("check", help="run the invariant and reference-agreement suite")
    add_common(chk)
    return parser


def _load(args: argparse.Namespace):
    """Read the config file (if any), apply flag overrides, validate."""
    text = args.config.read_text() if args.config else ""
    values = parse_pairs(text)
    overrides = {
        "sigma": args.sigma,
        "n": args.n,
        "dt": args.dt,
        "t_final": args.t_final,
        "seed": args.seed,
    }
    for key, value in overrides.items():
        if value is not None:
            values[key] = value
    params, config = build(values)
    violations = validate(params, config)
    if violations:
        raise ConfigError([f"constraint violated: {v}" for v in violations])
    return params, config


def _cmd_simulate(args: argparse.Namespace) -> int:
    params, config = _load(args)
    started = time.perf_counter()
    trajectory = simulate(config, params)
    d = series(trajectory, params)
    meta = RunMetadata(
        params=params,
        config=config,
        scheme=SCHEME_NAME,
        generator=GENERATOR_NAME,
        version=__version__,
        duration_s=time.perf_counter() - started,
    )
    args.out.mkdir(parents=True, exist_ok=True)
    csv_path = emit_run_csv(d, args.out / "run.csv", d_floor=config.d_floor, metadata=meta)
    write_run_plot_scripts(args.out)
    print(f"wrote {csv_path} ({d.t.shape[0]} records)")
    return EXIT_OK


def _cmd_ensemble(args: argparse.Namespace) -> int:
    if args.runs < 1:
        print("error: --runs must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    params, config = _load(args)
    started = time.perf_counter()
    stats = run_ensemble(args.runs, config, params, n_jobs=max(1, args.jobs))
    meta = RunMetadata(
        params=params,
        config=config,
        scheme=SCHEME_NAME,
        generator=GENERATOR_NAME,
        version=__version__,
        duration_s=time.perf_counter() - started,
        n_runs=args.runs,
    )
    args.out.mkdir(parents=True, exist_ok=True)
    csv_path = emit_ensemble_csv(stats, args.out / "ensemble.csv", metadata=meta)
    write_ensemble_plot_scripts(args.out)
    print(f"wrote {csv_path} ({args.runs} runs, {stats.times.shape[0]} records)")
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    params, config = _load(args)
    report = run_checks(params, config)
    for failure in report.failures:
        print(f"FAIL {failure}", file=sys.stderr)
    if report.failures:
        print(
            f"{len(report.failures)} of {report.n_checks} checks failed",
            file=sys.stderr,
        )
        return EXIT_CHECK
    print(f"all {report.n_checks} checks passed")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = _build_parser().parse_args(argv)
    handler = {
        "simulate": _cmd_simulate,
        "ensemble": _cmd_ensemble,
        "check": _cmd_check,
    }[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NonFiniteStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except EnsembleRunError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
