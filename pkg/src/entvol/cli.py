"""Command line front end.

Subcommands:

* ``run``         estimate volume ratios for one family (Table-style output)
* ``sweep-alpha`` ratio of the Renyi criterion over a grid of orders
* ``slice-bd``    deterministic scan of the Bell-diagonal a_z = 1/3 slice

Results go to CSV (long format, one criterion per row) or to a JSON run
manifest.  Relative output paths are placed under $ENTVOL_OUT_DIR when that
variable is set.  Exit codes: 0 success, 2 usage error, 3 runtime error.

CSV schemas (versioned with the package):

* run:         family,dims,criterion,alpha,count,total,ratio,std_error,inconclusive,seed,samples
* sweep-alpha: family,alpha,one_over_alpha,ratio,std_error
* slice-bd:    x,valid,ppt,reduction,majorization,s_inf,s_1
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import re
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .criteria import evaluate_all
from .estimator import DEFAULT_ALPHAS, ExperimentConfig, RatioEstimate, run_experiment
from .states import (
    BlochVector,
    StateFamily,
    bell_diagonal,
    general,
    is_state,
    qubit_qutrit_i,
    qubit_qutrit_ii,
    rebit_rebit,
    to_matrix,
    x_state,
)

RUN_CSV_HEADER = [
    "family", "dims", "criterion", "alpha", "count", "total",
    "ratio", "std_error", "inconclusive", "seed", "samples",
]
SWEEP_CSV_HEADER = ["family", "alpha", "one_over_alpha", "ratio", "std_error"]
SLICE_CSV_HEADER = ["x", "valid", "ppt", "reduction", "majorization", "s_inf", "s_1"]

# families with a fixed ambient system; "general" takes --dims instead
_FIXED_FAMILIES = {
    "bell-diagonal": (bell_diagonal, (2, 2)),
    "x-state": (x_state, (2, 2)),
    "rebit-rebit": (rebit_rebit, (2, 2)),
    "qbqt-i": (qubit_qutrit_i, (2, 3)),
    "qbqt-ii": (qubit_qutrit_ii, (2, 3)),
}
FAMILY_CHOICES = ["general", *_FIXED_FAMILIES]


def _parse_dims(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)x(\d+)", text)
    if not m:
        raise argparse.ArgumentTypeError(f"dims must look like '2x3', got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _parse_alpha(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid Renyi order {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"Renyi order must be positive, got {text}")
    return value


def _parse_alpha_grid(text: str) -> tuple[float, ...]:
    """Grid spec: comma-separated floats, 'inf', or 'start:stop:count' ranges,
    e.g. '1:10:19,inf'."""
    values: list[float] = []
    for part in text.split(","):
        part = part.strip()
        if re.fullmatch(r"[^:]+:[^:]+:\d+", part):
            start_s, stop_s, count_s = part.split(":")
            values.extend(
                float(v) for v in np.linspace(float(start_s), float(stop_s), int(count_s))
            )
        else:
            values.append(_parse_alpha(part))
    if not values:
        raise argparse.ArgumentTypeError("empty alpha grid")
    return tuple(values)


def _resolve_family(parser: argparse.ArgumentParser, args) -> StateFamily:
    if args.family == "general":
        if args.dims is None:
            parser.error("--family general requires --dims NAxNB")
        n_a, n_b = args.dims
        if n_a < 2 or n_b < 2:
            parser.error("--dims needs both subsystem dimensions >= 2")
        return general(n_a, n_b)
    builder, fixed_dims = _FIXED_FAMILIES[args.family]
    if args.dims is not None and args.dims != fixed_dims:
        parser.error(
            f"--family {args.family} is a {fixed_dims[0]}x{fixed_dims[1]} family, "
            f"got --dims {args.dims[0]}x{args.dims[1]}"
        )
    return builder()


def _resolve_out(out: str | None, default_name: str) -> Path:
    path = Path(out) if out else Path(default_name)
    if not path.is_absolute():
        base = os.environ.get("ENTVOL_OUT_DIR")
        if base:
            path = Path(base) / path
    return path


def _format_alpha(alpha: float | None) -> str:
    if alpha is None:
        return ""
    if alpha == math.inf:
        return "inf"
    return f"{alpha:g}"


def _add_experiment_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--family", required=True, choices=FAMILY_CHOICES)
    sub.add_argument("--dims", type=_parse_dims, default=None,
                     help="subsystem dimensions NAxNB (general family only)")
    sub.add_argument("--samples", type=int, required=True,
                     help="total emitted samples across all chains")
    sub.add_argument("--chains", type=int, default=16)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--burn-in", type=int, default=0)
    sub.add_argument("--thinning", type=int, default=1)
    sub.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                     help="worker processes for chains (default: available parallelism)")
    sub.add_argument("--progress", action="store_true",
                     help="print accepted-step throughput to stderr")
    sub.add_argument("--out", default=None, help="output file path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entvol",
        description="Volume ratios of entanglement detection criteria "
        "over uniformly sampled quantum states.",
    )
    parser.add_argument("--version", action="version", version=f"entvol {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    run_p = subs.add_parser("run", help="estimate ratios for one family")
    _add_experiment_flags(run_p)
    run_p.add_argument("--alpha", type=_parse_alpha, action="append", default=None,
                       help="Renyi order (repeatable; 'inf' allowed)")
    run_p.add_argument("--format", choices=["csv", "json"], default="csv")
    run_p.add_argument("--checkpoint", default=None,
                       help="JSON checkpoint file for resumable runs (single worker)")

    sweep_p = subs.add_parser("sweep-alpha", help="Renyi ratio over an order grid")
    _add_experiment_flags(sweep_p)
    sweep_p.add_argument("--alpha-grid", type=_parse_alpha_grid, required=True,
                         help="e.g. '1:10:19,inf' (19 points from 1 to 10, plus inf)")

    slice_p = subs.add_parser("slice-bd",
                              help="deterministic Bell-diagonal a_z=1/3 slice scan")
    slice_p.add_argument("--points", type=int, default=401,
                         help="grid resolution over x in [-1/2, 1/2]")
    slice_p.add_argument("--out", default=None)
    return parser


def _validate_experiment_args(parser: argparse.ArgumentParser, args) -> StateFamily:
    family = _resolve_family(parser, args)
    if args.samples < 1:
        parser.error(f"--samples must be >= 1, got {args.samples}")
    if args.chains < 1:
        parser.error("--chains must be >= 1")
    if args.samples < args.chains:
        parser.error(f"--samples ({args.samples}) must be >= --chains ({args.chains})")
    if args.burn_in < 0 or args.thinning < 1:
        parser.error("--burn-in must be >= 0 and --thinning >= 1")
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    return family


def _print_table(estimates: list[RatioEstimate]) -> None:
    print(f"{'criterion':<14}{'alpha':>7}  {'ratio':>10}  {'std_error':>10}  "
          f"{'fulfilled':>12}  flags")
    for e in estimates:
        flag = "inconclusive" if e.inconclusive else ""
        print(
            f"{e.criterion:<14}{_format_alpha(e.alpha):>7}  {e.ratio:>10.6f}  "
            f"{e.std_error:>10.2e}  {e.count_fulfilled:>6}/{e.total}  {flag}"
        )


def _write_run_csv(path: Path, args, estimates: list[RatioEstimate]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RUN_CSV_HEADER)
        for e in estimates:
            writer.writerow([
                args.family,
                e.dims,
                e.criterion,
                _format_alpha(e.alpha),
                e.count_fulfilled,
                e.total,
                repr(e.ratio),
                repr(e.std_error),
                "true" if e.inconclusive else "false",
                args.seed,
                args.samples,
            ])


def manifest_dict(args, config: ExperimentConfig,
                  estimates: list[RatioEstimate], duration: float) -> dict:
    """JSON run manifest; roundtrips losslessly through json.dumps/loads."""
    return {
        "schema": "entvol-run/1",
        "toolkit_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "duration_seconds": duration,
        "config": {
            "family": args.family,
            "dims": config.dims,
            "samples": config.total_samples,
            "chains": config.chains,
            "seed": config.seed,
            "alphas": [_format_alpha(a) for a in config.alphas],
            "burn_in": config.burn_in,
            "thinning": config.thinning,
        },
        "results": [
            {
                "criterion": e.criterion,
                "alpha": _format_alpha(e.alpha),
                "count": e.count_fulfilled,
                "total": e.total,
                "ratio": e.ratio,
                "std_error": e.std_error,
                "binomial_std_error": e.binomial_std_error,
                "inconclusive": e.inconclusive,
                "per_chain_ratios": list(e.per_chain_ratios),
            }
            for e in estimates
        ],
    }


def _cmd_run(parser: argparse.ArgumentParser, args) -> int:
    family = _validate_experiment_args(parser, args)
    alphas = tuple(args.alpha) if args.alpha else DEFAULT_ALPHAS
    config = ExperimentConfig(
        family=family,
        total_samples=args.samples,
        chains=args.chains,
        seed=args.seed,
        alphas=alphas,
        burn_in=args.burn_in,
        thinning=args.thinning,
    )
    started = time.perf_counter()
    estimates = run_experiment(
        config,
        checkpoint=args.checkpoint,
        progress=args.progress,
        workers=args.threads,
    )
    duration = time.perf_counter() - started
    suffix = "json" if args.format == "json" else "csv"
    out = _resolve_out(
        args.out, f"entvol_{args.family}_{config.dims}_{args.samples}.{suffix}"
    )
    if args.format == "json":
        out.write_text(json.dumps(manifest_dict(args, config, estimates, duration)))
    else:
        _write_run_csv(out, args, estimates)
    _print_table(estimates)
    print(f"wrote {out}")
    return 0


def _cmd_sweep_alpha(parser: argparse.ArgumentParser, args) -> int:
    family = _validate_experiment_args(parser, args)
    config = ExperimentConfig(
        family=family,
        total_samples=args.samples,
        chains=args.chains,
        seed=args.seed,
        alphas=args.alpha_grid,
        burn_in=args.burn_in,
        thinning=args.thinning,
    )
    estimates = [
        e
        for e in run_experiment(config, progress=args.progress, workers=args.threads)
        if e.criterion == "renyi"
    ]
    out = _resolve_out(args.out, f"entvol_sweep_{args.family}_{config.dims}.csv")
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_CSV_HEADER)
        for e in estimates:
            one_over = 0.0 if e.alpha == math.inf else 1.0 / e.alpha
            writer.writerow([
                args.family, _format_alpha(e.alpha), repr(one_over),
                repr(e.ratio), repr(e.std_error),
            ])
    _print_table(estimates)
    print(f"wrote {out}")
    return 0


def _cmd_slice_bd(parser: argparse.ArgumentParser, args) -> int:
    if args.points < 2:
        parser.error("--points must be >= 2")
    family = bell_diagonal()
    out = _resolve_out(args.out, "entvol_slice_bd.csv")
    rows = []
    for x in np.linspace(-0.5, 0.5, args.points):
        v = BlochVector(family, np.array([x, -x, 1.0 / 3.0]))
        if not is_state(v):
            rows.append([repr(float(x)), "false", "", "", "", "", ""])
            continue
        verdict = evaluate_all(to_matrix(v), 2, 2, alphas=(1.0, math.inf))
        rows.append([
            repr(float(x)),
            "true",
            str(verdict.ppt.fulfilled).lower(),
            str(verdict.reduction.fulfilled).lower(),
            str(verdict.majorization.fulfilled).lower(),
            str(verdict.renyi[math.inf].fulfilled).lower(),
            str(verdict.renyi[1.0].fulfilled).lower(),
        ])
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SLICE_CSV_HEADER)
        writer.writerows(rows)
    print(f"wrote {out} ({len(rows)} grid points)")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(parser, args)
        if args.command == "sweep-alpha":
            return _cmd_sweep_alpha(parser, args)
        return _cmd_slice_bd(parser, args)
    except BrokenPipeError:
        return 3
    except (RuntimeError, ValueError, OSError, ArithmeticError) as exc:
        print(f"entvol: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
