"""Command-line batch runs with CSV or JSON-lines output.

Every command writes plot-ready rows; CSV output starts with ``#`` comment
lines carrying the tool version (and, for ``well``, the level-index
convention).  Floats are printed with 17 significant digits.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .barrier import QUANTIZATION_CONVENTION, reflection, well_levels_oracle, well_levels_quantization
from .core import ConfigError, EvolutionTime, NumericPolicy, SegmentConfig, SeriesTruncationError, make_euclidean, require_valid
from .images import classical_path
from .kernels import compare_kernels, image_kernel
from .spectral import modes, spectral_kernel, trace


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_grid(text: str) -> list[float]:
    """``"0.3"``, ``"0.1,0.5,0.9"`` or ``"start:stop:count"`` (inclusive)."""
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            count = int(count)
            if count < 1:
                raise argparse.ArgumentTypeError(f"grid count must be >= 1 in {text!r}")
            return [float(v) for v in np.linspace(float(start), float(stop), count)]
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None


def _tau_grid(text: str) -> list[EvolutionTime]:
    try:
        return [make_euclidean(t) for t in parse_grid(text)]
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _complex_list(text: str) -> list[complex]:
    try:
        return [complex(part.replace(" ", "")) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad complex time {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


@dataclass
class RunConfig:
    command: str
    cfg: SegmentConfig
    policy: NumericPolicy
    fmt: str = "csv"
    output: str | None = None
    xs: list[float] = field(default_factory=list)
    ys: list[float] = field(default_factory=list)
    times: list[EvolutionTime] = field(default_factory=list)


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def render(rows: list[dict], fmt: str, comments=()) -> str:
    if fmt == "json":
        return "".join(json.dumps({k: _jsonable(v) for k, v in row.items()}) + "\n" for row in rows)
    lines = [f"# segprop {__version__}"] + [f"# {c}" for c in comments]
    if rows:
        cols = list(rows[0])
        lines.append(",".join(cols))
        lines.extend(",".join(_fmt(row[c]) for c in cols) for row in rows)
    return "\n".join(lines) + "\n"


def _jsonable(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        v = float(v)
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def _kernel_row(cfg, x, y, dt, res) -> dict:
    return {
        "bc": cfg.bc,
        "x": x,
        "y": y,
        "dt_re": dt.re,
        "dt_im": dt.im,
        "value_re": res.value.real,
        "value_im": res.value.imag,
        "terms": res.terms_used,
        "tail_bound": res.tail_bound,
    }


def cmd_spectrum(cfg: SegmentConfig, count: int) -> list[dict]:
    return [{"n": m.n, "k": m.k, "E": m.E} for m in modes(cfg, count).modes]


def cmd_propagate(run: RunConfig, method: str) -> list[dict]:
    rows = []
    for x, y, dt in itertools.product(run.xs, run.ys, run.times):
        if method == "both":
            rows.append(compare_kernels(run.cfg, x, y, dt, run.policy).to_record())
        else:
            kernel = spectral_kernel if method == "spectral" else image_kernel
            rows.append(_kernel_row(run.cfg, x, y, dt, kernel(run.cfg, x, y, dt, run.policy)))
    return rows


def cmd_paths(cfg: SegmentConfig, x: float, y: float, r_list: list[int], t0: float, t1: float) -> list[dict]:
    rows = []
    for r in r_list:
        for t, pos in classical_path(r, x, y, t0, t1, cfg.L):
            rows.append({"r": r, "t": t, "x": pos})
    return rows


def cmd_trace(run: RunConfig) -> list[dict]:
    rows = []
    for dt in run.times:
        res = trace(run.cfg, dt, run.policy)
        rows.append(
            {
                "bc": run.cfg.bc,
                "dt_re": dt.re,
                "dt_im": dt.im,
                "value_re": res.value.real,
                "value_im": res.value.imag,
                "terms": res.terms_used,
                "tail_bound": res.tail_bound,
            }
        )
    return rows


def cmd_barrier(E: float, h: float, m: float = 1.0, hbar: float = 1.0) -> list[dict]:
    s = reflection(E, h, m, hbar)
    return [{"E": s.E, "h": s.h, "k": s.k, "q": s.q, "R_re": s.R.real, "R_im": s.R.imag, "theta": s.theta}]


def cmd_well(L: float, h: float, method: str, m: float = 1.0, hbar: float = 1.0, policy=None) -> list[dict]:
    policy = policy or NumericPolicy()
    if method == "oracle":
        found = well_levels_oracle(L, h, m, hbar)
        return [{"n": lv.n, "k": lv.k, "E": lv.E} for lv in found.levels]
    quant = well_levels_quantization(L, h, m, hbar, policy)
    if method == "quantization":
        return [{"n": lv.n, "k": lv.k, "E": lv.E} for lv in quant.levels]
    oracle = well_levels_oracle(L, h, m, hbar)
    if len(oracle) != len(quant):
        raise ValueError(f"level counts differ: quantization {len(quant)}, oracle {len(oracle)}")
    return [
        {"n": a.n, "k": a.k, "E": a.E, "E_oracle": b.E, "abs_diff": abs(a.E - b.E)}
        for a, b in zip(quant.levels, oracle.levels)
    ]


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--output", "-o", default=None, help="output file (default: stdout)")

    segment = _Parser(add_help=False)
    segment.add_argument("--bc", default="DD", help="left/right boundary letters: DD, NN, ND or DN")
    segment.add_argument("--L", type=float, default=1.0)
    segment.add_argument("--m", type=float, default=1.0)
    segment.add_argument("--hbar", type=float, default=1.0)
    segment.add_argument("--abs-tol", type=float, default=1e-12)
    segment.add_argument("--rel-tol", type=float, default=1e-10)
    segment.add_argument("--max-terms", type=int, default=100_000)

    timing = _Parser(add_help=False)
    timing.add_argument("--tau", type=_tau_grid, help="Euclidean time grid (dt = -i tau)")
    timing.add_argument("--dt", type=_complex_list, help="complex times, e.g. '0.3-0.05j'")
    timing.add_argument("--real-time", action="store_true", help="allow im(dt) == 0 (no error certificate)")

    parser = _Parser(prog="segprop", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"segprop {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[common, segment], help="eigenmode table")
    p.add_argument("--count", type=int, default=5)

    for name in ("propagate", "compare"):
        p = sub.add_parser(name, parents=[common, segment, timing], help="propagator on a grid")
        p.add_argument("--x", type=parse_grid, required=True)
        p.add_argument("--y", type=parse_grid, required=True)
        if name == "propagate":
            p.add_argument("--method", choices=["spectral", "image", "both"], default="both")

    p = sub.add_parser("paths", parents=[common, segment], help="reflected classical paths as polylines")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--r", type=_int_list, default=[0])
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, default=1.0)

    sub.add_parser("trace", parents=[common, segment, timing], help="partition function")

    p = sub.add_parser("barrier", parents=[common], help="step-barrier reflection phase")
    p.add_argument("--E", type=float, required=True)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--hbar", type=float, default=1.0)

    p = sub.add_parser("well", parents=[common], help="finite square well bound levels")
    p.add_argument("--L", type=float, default=1.0)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--method", choices=["quantization", "oracle", "both"], default="both")
    return parser


def _times(args) -> list[EvolutionTime]:
    if (args.tau is None) == (args.dt is None):
        raise UsageError("give exactly one of --tau or --dt")
    if args.tau is not None:
        return args.tau
    try:
        return [EvolutionTime.from_complex(z, allow_real=args.real_time) for z in args.dt]
    except ConfigError as exc:
        raise UsageError(str(exc)) from None


def _run_config(args, with_grid=True) -> RunConfig:
    cfg = require_valid(SegmentConfig.from_bc(args.bc, args.L, args.m, args.hbar))
    policy = NumericPolicy(args.abs_tol, args.rel_tol, args.max_terms)
    run = RunConfig(args.command, cfg, policy, args.format, args.output)
    if with_grid:
        run.times = _times(args)
    if hasattr(args, "x") and isinstance(args.x, list):
        run.xs, run.ys = args.x, args.y
        for v in run.xs + run.ys:
            if not 0 <= v <= cfg.L:
                raise UsageError(f"position {v} outside [0, {cfg.L}]")
    return run


def execute(args) -> tuple[list[dict], list[str]]:
    comments = []
    if args.command == "spectrum":
        run = _run_config(args, with_grid=False)
        rows = cmd_spectrum(run.cfg, args.count)
    elif args.command in ("propagate", "compare"):
        run = _run_config(args)
        rows = cmd_propagate(run, getattr(args, "method", "both"))
    elif args.command == "paths":
        run = _run_config(args, with_grid=False)
        rows = cmd_paths(run.cfg, args.x, args.y, args.r, args.t0, args.t1)
    elif args.command == "trace":
        rows = cmd_trace(_run_config(args))
    elif args.command == "barrier":
        rows = cmd_barrier(args.E, args.h, args.m, args.hbar)
    else:
        rows = cmd_well(args.L, args.h, args.method, args.m, args.hbar)
        comments.append(f"convention: {QUANTIZATION_CONVENTION}")
    return rows, comments


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        rows, comments = execute(args)
    except UsageError as exc:
        print(f"segprop: usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, SeriesTruncationError) as exc:
        print(f"segprop: error: {exc}", file=sys.stderr)
        return 1
    text = render(rows, args.format, comments)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
