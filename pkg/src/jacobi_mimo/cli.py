"""Command-line front end.

    jacobi-mimo point    --m 6 --mt 2 --mr 2 --snr-db 10
    jacobi-mimo sweep    --m 6 --mt 2 --mr 2 --snr-db -10:30:5 --trials 10000 --seed 7
    jacobi-mimo density  --m 6 --mt 2 --mr 2 --points 101
    jacobi-mimo figure   1a
    jacobi-mimo validate

Exit status: 0 success, 1 validation or I/O failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import capacity
from .density import marginal_density
from .model import ChannelConfig, canonicalize, jacobi_params
from .output import fmt, sweep_csv, sweep_header, sweep_line

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_NAMED = "reference configuration"
_RECON = "representative configuration"


@dataclass(frozen=True)
class Figure:
    configs: tuple[ChannelConfig, ...]
    grid: tuple[float, float, float]
    source: str


FIGURES = {
    "1a": Figure((ChannelConfig(6, 2, 2), ChannelConfig(16, 4, 10)), (-10, 30, 5), _NAMED),
    "1b": Figure((ChannelConfig(4, 1, 2), ChannelConfig(8, 2, 4), ChannelConfig(16, 4, 8)), (0, 40, 5), _RECON),
    "2a": Figure((ChannelConfig(8, 2, 4), ChannelConfig(16, 2, 4), ChannelConfig(32, 2, 4)), (-30, 10, 5), _RECON),
    "2b": Figure((ChannelConfig(128, 8, 16), ChannelConfig(128, 16, 32), ChannelConfig(128, 32, 64)), (-10, 30, 5), _RECON),
    "3a": Figure((ChannelConfig(16, 6, 12), ChannelConfig(16, 12, 6)), (-10, 30, 5), _RECON),
    "3b": Figure((ChannelConfig(64, 40, 40), ChannelConfig(64, 24, 48)), (-20, 40, 5), _RECON),
}


class UsageError(Exception):
    pass


def parse_grid(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"bad SNR specification {text!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise UsageError("SNR values must be finite")
    if len(vals) == 1:
        return vals[0], vals[0], 1.0
    if len(vals) != 3:
        raise UsageError(f"SNR grid must be start:stop:step, got {text!r}")
    start, stop, step = vals
    if step <= 0 or start > stop:
        raise UsageError(f"empty SNR grid {text!r}")
    return start, stop, step


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _seed(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _add_run_flags(p, snr_required):
    p.add_argument("--snr-db", required=snr_required, help="SNR in dB, X or start:stop:step")
    p.add_argument("--trials", type=_positive_int, default=capacity.DEFAULT_TRIALS)
    p.add_argument("--seed", type=_seed, default=capacity.DEFAULT_SEED)
    p.add_argument("--quad-order", type=_positive_int, default=None)
    p.add_argument("--units", choices=("nats", "bits"), default="nats")
    p.add_argument("--output", default="-", help="output path, '-' for standard output")
    p.add_argument("--workers", type=_positive_int, default=1, help="threads for Monte Carlo sampling")


def _add_cfg_flags(p):
    p.add_argument("--m", type=_positive_int, required=True, help="total modes/cores")
    p.add_argument("--mt", type=_positive_int, required=True, help="excited transmit channels")
    p.add_argument("--mr", type=_positive_int, required=True, help="excited receive channels")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jacobi-mimo", description="Ergodic capacity of MIMO Jacobi-fading channels.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="all capacity quantities at one SNR")
    _add_cfg_flags(p)
    _add_run_flags(p, snr_required=True)

    p = sub.add_parser("sweep", help="capacity quantities over an SNR grid")
    _add_cfg_flags(p)
    _add_run_flags(p, snr_required=True)

    p = sub.add_parser("density", help="tabulate the one-point eigenvalue density")
    _add_cfg_flags(p)
    p.add_argument("--points", type=_positive_int, default=101)
    p.add_argument("--output", default="-")

    p = sub.add_parser("figure", help="sweep data for a preset group of configurations")
    p.add_argument("id", choices=sorted(FIGURES))
    _add_run_flags(p, snr_required=False)

    p = sub.add_parser("validate", help="run the validation suite")
    p.add_argument("--seed", type=_seed, default=capacity.DEFAULT_SEED)
    p.add_argument("--trials", type=_positive_int, default=capacity.DEFAULT_TRIALS)
    p.add_argument("--output", default="-")
    return parser


def _config(args) -> ChannelConfig:
    try:
        return ChannelConfig(args.m, args.mt, args.mr)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_run(args, cfgs):
    if args.trials < 100:
        raise UsageError("--trials must be >= 100")
    if args.quad_order is not None:
        for cfg in cfgs:
            lo = capacity.min_quad_order(cfg)
            if args.quad_order < lo:
                raise UsageError(f"--quad-order must be >= {lo} for {cfg}")


def _sweep_rows(cfg, grid, args):
    return capacity.sweep(cfg, *grid, trials=args.trials, seed=args.seed, order=args.quad_order, workers=args.workers)


def render(args) -> tuple[str, int]:
    """Produce the output text and exit status for a parsed command line."""
    if args.command in ("point", "sweep"):
        cfg = _config(args)
        grid = parse_grid(args.snr_db)
        if args.command == "point" and grid[0] != grid[1]:
            raise UsageError("point takes a single --snr-db value")
        _check_run(args, [cfg])
        return sweep_csv(_sweep_rows(cfg, grid, args), args.units), EXIT_OK

    if args.command == "density":
        cf = canonicalize(_config(args))
        if cf.reduced is None:
            raise UsageError("all eigenvalues equal 1 for this configuration; there is no density to tabulate")
        p = jacobi_params(cf.reduced)
        lam = np.linspace(0.0, 1.0, args.points) if args.points > 1 else np.array([0.5])
        dens = np.atleast_1d(marginal_density(lam, p))
        lines = ["lambda,density"] + [f"{fmt(x)},{fmt(y)}" for x, y in zip(lam, dens)]
        return "\n".join(lines) + "\n", EXIT_OK

    if args.command == "figure":
        fig = FIGURES[args.id]
        grid = parse_grid(args.snr_db) if args.snr_db else fig.grid
        _check_run(args, fig.configs)
        lines = [sweep_header(with_config=True)]
        for cfg in fig.configs:
            lines += [sweep_line(r, args.units, cfg.label()) for r in _sweep_rows(cfg, grid, args)]
        return "\n".join(lines) + "\n", EXIT_OK

    if args.command == "validate":
        from .validation import constant_gap_report, run_all

        out = []

        def log(chk):
            out.append(chk.line())
            out.extend("    " + d for d in chk.details)

        checks = run_all(seed=args.seed, trials=args.trials, log=log)
        out.append("exact - lower gap for m_t + m_r > m (reported only), grid -10..30 dB step 5:")
        out.extend("    " + line for line in constant_gap_report())
        failed = [c.name for c in checks if not c.passed]
        out.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
        if failed:
            out.append("failed: " + "; ".join(failed))
        return "\n".join(out) + "\n", EXIT_FAIL if failed else EXIT_OK

    raise UsageError(f"unknown command {args.command!r}")


def _join_snr_flag(argv):
    # "--snr-db -10:30:5" would otherwise be read as an unknown option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--snr-db" and i + 1 < len(argv):
            out.append(f"--snr-db={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_snr_flag(sys.argv[1:] if argv is None else list(argv)))
    try:
        text, status = render(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"jacobi-mimo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.output == "-":
            sys.stdout.write(text)
            sys.stdout.flush()
        else:
            with open(args.output, "w", encoding="ascii", newline="\n") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"jacobi-mimo: cannot write output: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return status


if __name__ == "__main__":
    sys.exit(main())
