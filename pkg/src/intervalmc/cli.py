"""Command-line front end.

    intervalmc interval neyman --x0 3
    intervalmc interval bayes --x0 5
    intervalmc experiment fig5 --n 1000000 --seed 7 --output fig5.csv
    intervalmc scatter --n 2000 --a-max 4 --output joint.csv
    intervalmc validate fig5.csv

Exit codes: 0 success, 1 runtime/numeric/I/O failure, 2 usage error.
The default seed can be overridden with the INTERVALMC_SEED environment
variable.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from pathlib import Path

from .bayes import credible_interval
from .errors import IntervalError
from .figures import (
    EXPERIMENTS,
    SchemaError,
    grid,
    rows_to_csv,
    rows_to_json,
    run_experiment,
    scatter,
    scatter_to_csv,
    validate_csv,
)
from .intervals import PHI_MINUS_1, PHI_PLUS_1, QuantileConstraint
from .model import DEFAULT_MODEL
from .neyman import AllowNegative, ClipToZero, FlipFlop, confidence_interval, coverage_probability_given_x0

SEED_ENV = "INTERVALMC_SEED"
FALLBACK_SEED = 20120101


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return FALLBACK_SEED
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"intervalmc: {SEED_ENV} must be an integer, got {raw!r}")


def _add_constraint_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("quantile constraint")
    g.add_argument("--q-lo", type=float, help="lower tail probability (default Phi(-1))")
    g.add_argument("--q-hi", type=float, help="upper tail probability (default Phi(1))")
    g.add_argument("--alpha", type=float, help="coverage; sets q_hi = q_lo + alpha")
    g.add_argument(
        "--rounded-quantiles",
        action="store_true",
        help="use the two-digit pair (0.16, 0.84) instead of (Phi(-1), Phi(1))",
    )


def _add_policy_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("boundary policy (Neyman only)")
    g.add_argument("--policy", choices=("allow", "clip", "flipflop"), default="allow")
    g.add_argument("--threshold", type=float, default=1.0, help="flip-flop switch point in units of u")
    g.add_argument("--upper-tail", type=float, default=0.32, help="flip-flop upper-limit tail probability")


def _constraint(args, parser) -> QuantileConstraint:
    q_lo, q_hi = (0.16, 0.84) if args.rounded_quantiles else (PHI_MINUS_1, PHI_PLUS_1)
    if args.q_lo is not None:
        q_lo = args.q_lo
    if args.q_hi is not None:
        q_hi = args.q_hi
    if args.alpha is not None:
        if args.q_hi is not None:
            parser.error("--alpha and --q-hi are mutually exclusive")
        q_hi = q_lo + args.alpha
    try:
        return QuantileConstraint(q_lo, q_hi)
    except IntervalError as exc:
        parser.error(str(exc))


def _policy(args, parser):
    if args.policy == "allow":
        return AllowNegative()
    if args.policy == "clip":
        return ClipToZero()
    try:
        return FlipFlop(args.threshold, args.upper_tail)
    except (IntervalError, ValueError) as exc:
        parser.error(str(exc))


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intervalmc",
        description="Confidence and credible intervals for a positive Gaussian measurand.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interval", help="build one interval from a datum")
    p.add_argument("kind", choices=("neyman", "bayes"))
    p.add_argument("--x0", type=float, required=True, help="measured value in units of u")
    p.add_argument("--u", type=_positive_float, default=1.0, help="rescale printed endpoints by u")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_constraint_args(p)
    _add_policy_args(p)

    p = sub.add_parser("experiment", help="success-rate sweep over a grid")
    p.add_argument("name", choices=sorted(EXPERIMENTS))
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--step", type=float)
    p.add_argument("--values", type=str, help="comma-separated grid values; overrides start/stop/step")
    p.add_argument("--n", dest="n_trials", type=_positive_int, default=10**6)
    p.add_argument("--seed", type=int)
    p.add_argument("--a-seed", type=float, default=1.0, help="measurand used by the shift sampler (fig4*)")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--u", type=_positive_float, default=1.0, help="rescale grid values on output")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", type=Path, help="output file (default stdout)")
    _add_constraint_args(p)
    _add_policy_args(p)

    p = sub.add_parser("scatter", help="joint (a, x) sample under a flat prior on [0, a_max]")
    p.add_argument("--n", dest="n_trials", type=_positive_int, default=2000)
    p.add_argument("--a-max", type=_positive_float, default=4.0)
    p.add_argument("--seed", type=int)
    p.add_argument("--u", type=_positive_float, default=1.0)
    p.add_argument("--output", "-o", type=Path)

    p = sub.add_parser("validate", help="check a CSV written by this tool")
    p.add_argument("path", type=Path)
    return parser


def _open_output(output: Path | None):
    # Opened before any simulation so a bad path fails fast.
    if output is None:
        return contextlib.nullcontext(sys.stdout)
    return open(output, "w", newline="")


def _cmd_interval(args, parser) -> int:
    c = _constraint(args, parser)
    if args.kind == "neyman":
        policy = _policy(args, parser)
        iv = confidence_interval(args.x0, c, policy, DEFAULT_MODEL)
        record = {
            "kind": "neyman",
            "policy": policy.name,
            "x0": args.x0 * args.u,
            "lo": iv.lo * args.u,
            "hi": iv.hi * args.u,
            "coverage_given_x0": coverage_probability_given_x0(iv, args.x0),
        }
    else:
        iv = credible_interval(args.x0, c)
        record = {"kind": "bayes", "x0": args.x0 * args.u, "lo": iv.lo * args.u, "hi": iv.hi * args.u}
    record.update(q_lo=c.q_lo, q_hi=c.q_hi, alpha=c.alpha)

    if args.format == "json":
        print(json.dumps(record))
    else:
        print(" ".join(f"{k}={v:.12g}" if isinstance(v, float) else f"{k}={v}" for k, v in record.items()))
    return 0


def _cmd_experiment(args, parser) -> int:
    c = _constraint(args, parser)
    policy = _policy(args, parser)
    if args.values:
        try:
            values = [float(v) for v in args.values.split(",") if v.strip()]
        except ValueError:
            parser.error("--values must be a comma-separated list of numbers")
        if not values:
            parser.error("--values is empty")
    else:
        start, stop, step = EXPERIMENTS[args.name][1]
        start = start if args.start is None else args.start
        stop = stop if args.stop is None else args.stop
        step = step if args.step is None else args.step
        try:
            values = grid(start, stop, step)
        except ValueError as exc:
            parser.error(str(exc))
    if EXPERIMENTS[args.name][0] == "a" and min(values) <= 0:
        parser.error("measurand grid values must be positive")

    seed = _default_seed() if args.seed is None else args.seed
    with _open_output(args.output) as out:
        rows = run_experiment(
            args.name,
            values,
            n=args.n_trials,
            seed=seed,
            c=c,
            policy=policy,
            a_seed=args.a_seed,
            workers=args.workers,
        )
        out.write(rows_to_csv(rows, args.u) if args.format == "csv" else rows_to_json(rows, args.u))
    return 0


def _cmd_scatter(args, parser) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    with _open_output(args.output) as out:
        out.write(scatter_to_csv(scatter(args.n_trials, args.a_max, seed), args.u))
    return 0


def _cmd_validate(args, parser) -> int:
    try:
        kind, count = validate_csv(args.path.read_text())
    except SchemaError as exc:
        print(f"intervalmc: {args.path}: {exc}", file=sys.stderr)
        return 1
    print(f"{args.path}: valid {kind} table, {count} rows")
    return 0


COMMANDS = {
    "interval": _cmd_interval,
    "experiment": _cmd_experiment,
    "scatter": _cmd_scatter,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, parser)
    except (IntervalError, OSError, ArithmeticError) as exc:
        print(f"intervalmc: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
