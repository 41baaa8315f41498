"""Command-line entry points.

    eur-hawking run --preset fig1a --out DIR [--jobs N] [--format csv]
    eur-hawking run --config FILE --out DIR
    eur-hawking eval --c1 1 --c2 -1 --c3 1 --noise dp --strength 0 \
                     --temperature 0 --omega 1 [--gamma G] [--csv FILE]
    eur-hawking list-presets

Exit codes: 0 success, 2 configuration error, 3 numerical-contract violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ContractViolationError, DomainError, PostSelectionError
from .scenarios import evaluate_point
from .states import BellParams
from .sweeps import PRESETS, ConfigError, format_float, parse_sweep_config, run_sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eur-hawking",
        description="Entropic-uncertainty sweeps for a noisy qubit with a "
                    "quantum memory near a Schwarzschild horizon.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a figure preset or a sweep config file")
    source = run.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=sorted(PRESETS), help="figure preset name")
    source.add_argument("--config", type=Path, help="flat key-value sweep file")
    run.add_argument("--out", type=Path, required=True, help="output directory")
    run.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    run.add_argument("--format", default="csv", choices=("csv",), help="output format")

    ev = sub.add_parser("eval", help="evaluate a single parameter point")
    ev.add_argument("--c1", type=float, required=True)
    ev.add_argument("--c2", type=float, required=True)
    ev.add_argument("--c3", type=float, required=True)
    ev.add_argument("--noise", choices=("dp", "pd"), required=True)
    ev.add_argument("--strength", type=float, required=True, help="p (dp) or q (pd)")
    ev.add_argument("--temperature", type=float, required=True, help="Hawking temperature")
    ev.add_argument("--omega", type=float, default=1.0, help="mode frequency (default 1)")
    ev.add_argument("--gamma", type=float, default=0.0, help="weak-measurement strength")
    ev.add_argument("--csv", type=Path, default=None, help="also write a single-row CSV")

    sub.add_parser("list-presets", help="list figure presets")
    return parser


def _cmd_run(args) -> int:
    if args.jobs < 1:
        raise ConfigError(f"--jobs must be >= 1, got {args.jobs}")
    if args.preset:
        spec, figure_id = PRESETS[args.preset], args.preset
    else:
        try:
            text = args.config.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config file {args.config}: {exc}") from exc
        spec, figure_id = parse_sweep_config(text), args.config.stem
    manifest = run_sweep(spec, args.out, figure_id=figure_id, jobs=args.jobs)
    print(f"{manifest.figure_id}: {manifest.rows} rows -> "
          f"{Path(args.out) / manifest.csv_path} ({manifest.duration_seconds:.2f}s)")
    return EXIT_OK


_EVAL_FIELDS = (
    ("U_analytic", "lhs_analytic"),
    ("U_numeric", "lhs_numeric"),
    ("Ub_analytic", "bound_analytic"),
    ("Ub_numeric", "bound_numeric"),
    ("conditional_entropy", "conditional_entropy"),
    ("QD", "discord"),
    ("mixedness", "mixedness"),
    ("Psucc", "success_probability"),
)


def _cmd_eval(args) -> int:
    if args.omega <= 0:
        raise ConfigError(f"--omega must be positive, got {args.omega}")
    report = evaluate_point(
        args.noise,
        BellParams(args.c1, args.c2, args.c3),
        strength=args.strength,
        t_over_omega=args.temperature / args.omega,
        omega=args.omega,
        gamma=args.gamma,
    )
    for label, attr in _EVAL_FIELDS:
        print(f"{label}: {format_float(getattr(report, attr))}")
    print(f"status: {report.status}")
    if args.csv is not None:
        header = ",".join(label for label, _ in _EVAL_FIELDS) + ",status"
        row = ",".join(format_float(getattr(report, attr)) for _, attr in _EVAL_FIELDS)
        args.csv.parent.mkdir(parents=True, exist_ok=True)
        args.csv.write_text(header + "\n" + row + f",{report.status}\n", encoding="utf-8")
    if any(flag == "inequality_violation" or flag.startswith("dual_path") for flag in report.flags):
        return EXIT_NUMERICAL
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "list-presets":
            for name in sorted(PRESETS):
                spec = PRESETS[name]
                print(f"{name}: scenario={spec.scenario} bell={spec.bell.as_tuple()} "
                      f"fixed={dict(spec.fixed)}")
            return EXIT_OK
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ContractViolationError, PostSelectionError) as exc:
        print(f"numerical contract violation: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
