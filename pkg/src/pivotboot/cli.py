"""Command-line frontend.

Subcommands: ``ci`` (interval from a data file), ``table`` (one design
point of a coverage-comparison table), ``ydist`` (replicate-count
distribution and refined cutoff), ``bound`` (error-bound evaluation and
rate functions), ``weights`` (dump one weight draw).

Every report is JSON with an embedded manifest (command, resolved
configuration, seed, version, timestamp).  Reports are a pure function of
the manifest: rerunning with the same seed and configuration reproduces the
bytes exactly, for any ``--threads`` value.  ``--threads`` and the output
mode are execution knobs and deliberately excluded from the manifest;
``--timestamp`` pins the one field that would otherwise change between
reruns.

Exit codes: 0 success, 2 usage or configuration error, 3 degenerate weights
exhausted the redraw budget.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import math
import os
import secrets
import sys

import numpy as np

from . import __version__
from .bounds import (
    BoundParams,
    RateKind,
    bound_terms,
    convergence_rate,
    delta_n,
)
from .errors import DegenerateWeightsError, PivotbootError
from .estimators import Sample
from .intervals import (
    IntervalTarget,
    ci_ecdf,
    ci_finite_pop_mean,
    ci_population_mean,
    ci_sample_mean,
    ci_superpop_mean,
)
from .jsonio import dumps
from .multi_bootstrap import (
    GENZ_LEVEL_B9,
    orthant_probability_closed_form,
    y_distribution,
    y_quantile,
)
from .rng import substream
from .simulation import MODELS, SimConfig, run_table1, run_table2
from .weights import WeightScheme, WeightVector, center, draw_multinomial_weights

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGENERATE = 3

REDRAW_LIMIT = 100
SEED_ENV_VAR = "PIVOTBOOT_SEED"

_CI_METHODS = ("population", "sample", "finitepop", "superpop", "ecdf", "cdf")


class _CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE) -> None:
        super().__init__(message)
        self.code = code


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise _CliError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from exc
    return secrets.randbits(63)


def _manifest(command: str, config: dict, seed: int, timestamp: str | None) -> dict:
    if timestamp is None:
        timestamp = _dt.datetime.now(_dt.timezone.utc).isoformat()
    return {
        "command": command,
        "config": config,
        "seed": seed,
        "version": __version__,
        "timestamp": timestamp,
    }


def _read_numbers(path: str, what: str) -> list[float]:
    """One decimal literal per line; '#' comments and blank lines ignored;
    LF and CRLF both accepted."""
    try:
        with open(path, "r", newline="") as fh:
            raw = fh.read()
    except OSError as exc:
        raise _CliError(f"cannot read {what} file {path!r}: {exc}") from exc
    values: list[float] = []
    for lineno, line in enumerate(raw.replace("\r\n", "\n").split("\n"), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            values.append(float(stripped))
        except ValueError as exc:
            raise _CliError(
                f"{what} file {path!r}, line {lineno}: {stripped!r} is not a number"
            ) from exc
    return values


def _weights_from_file(path: str, n: int) -> WeightVector:
    values = _read_numbers(path, "weights")
    if len(values) != n:
        raise _CliError(f"weights file has {len(values)} entries, data has {n}")
    arr = np.asarray(values)
    if np.any(arr < 0):
        raise _CliError("weights must be nonnegative")
    integral = bool(np.array_equal(arr, np.round(arr)))
    scheme = WeightScheme.MULTINOMIAL if integral else WeightScheme.IID_POSITIVE
    return WeightVector(counts=arr, m=float(arr.sum()), scheme=scheme)


def _draw_nondegenerate(n: int, m: int, seed: int) -> tuple[WeightVector, int]:
    stream = substream(seed, "cli.ci")
    for attempt in range(REDRAW_LIMIT + 1):
        w = draw_multinomial_weights(n, m, stream)
        if center(w, n).sum_squares > 0.0:
            return w, attempt
    raise _CliError(
        f"weights stayed degenerate after {REDRAW_LIMIT} redraws", EXIT_DEGENERATE
    )


def _cmd_ci(args: argparse.Namespace) -> dict:
    data = _read_numbers(args.data, "data")
    if len(data) < 2:
        raise _CliError(f"data file {args.data!r} must contain at least 2 values")
    sample = Sample.from_values(data)
    n = sample.n
    seed = _resolve_seed(args.seed)

    redraws = 0
    if args.weights_file is not None:
        if args.m is not None:
            raise _CliError("give either --m (draw weights) or --weights-file, not both")
        w = _weights_from_file(args.weights_file, n)
    else:
        m = args.m if args.m is not None else n
        w, redraws = _draw_nondegenerate(n, m, seed)
    cw = center(w, n)
    if cw.sum_squares <= 0.0:
        raise _CliError("supplied weights are degenerate (all centered values zero)",
                        EXIT_DEGENERATE)

    method = args.method
    if method in ("ecdf", "cdf") and args.x is None:
        raise _CliError(f"method {method!r} requires --x")
    try:
        if method == "population":
            interval = ci_population_mean(sample, cw, args.alpha)
        elif method == "sample":
            interval = ci_sample_mean(sample, w, cw, args.alpha)
        elif method == "finitepop":
            interval = ci_finite_pop_mean(sample, w, cw, args.alpha)
        elif method == "superpop":
            interval = ci_superpop_mean(sample, w, cw, args.alpha)
        elif method == "ecdf":
            interval = ci_ecdf(sample, w, cw, args.x, args.alpha, IntervalTarget.ECDF_VALUE)
        else:
            interval = ci_ecdf(sample, w, cw, args.x, args.alpha, IntervalTarget.CDF_VALUE)
    except DegenerateWeightsError as exc:
        raise _CliError(str(exc), EXIT_DEGENERATE) from exc
    except PivotbootError as exc:
        raise _CliError(str(exc)) from exc

    config = {
        "data": args.data,
        "method": method,
        "alpha": args.alpha,
        "n": n,
        "weights_file": args.weights_file,
        "m": w.m,
    }
    if args.x is not None:
        config["x"] = args.x
    return {
        "manifest": _manifest("ci", config, seed, args.timestamp),
        "interval": {
            "lo": interval.lo,
            "hi": interval.hi,
            "level": interval.level,
            "target": interval.target.value,
            "recipe": interval.recipe,
            "clamped": interval.clamped,
        },
        "weight_redraws": redraws,
    }


def _render_table(report_dict: dict) -> str:
    cells = report_dict["cells"]
    stats = list(dict.fromkeys(c["statistic"] for c in cells))
    header = ["Distribution", "n"] + stats
    row = [cells[0]["distribution"], repr(cells[0]["n"])]
    by_stat = {c["statistic"]: c["frequency"] for c in cells}
    row += [repr(by_stat[s]) for s in stats]
    widths = [max(len(header[i]), len(row[i])) for i in range(len(header))]
    lines = [
        "  ".join(header[i].ljust(widths[i]) for i in range(len(header))).rstrip(),
        "  ".join(row[i].ljust(widths[i]) for i in range(len(header))).rstrip(),
    ]
    return "\n".join(lines)


def _cmd_table(args: argparse.Namespace) -> dict | str:
    seed = _resolve_seed(args.seed)
    try:
        cfg = SimConfig(
            model=args.model,
            n=args.n,
            m=args.m,
            outer_reps=args.outer,
            inner_reps=args.inner,
            threshold=args.threshold,
            nominal=args.nominal,
            tolerance_band=args.band,
            B=args.B,
            seed=seed,
        )
    except ValueError as exc:
        raise _CliError(str(exc)) from exc
    runner = run_table1 if args.which == 1 else run_table2
    report = runner(cfg, threads=args.threads)
    payload = {
        "manifest": _manifest(f"table{args.which}", dict(report.config), seed, args.timestamp),
        "report": report.to_dict(),
    }
    if args.text:
        return _render_table(payload["report"])
    return payload


def _cmd_ydist(args: argparse.Namespace) -> dict:
    if args.B < 2:
        raise _CliError("B must be at least 2")
    dist = y_distribution(args.B)
    config = {"B": args.B}
    result = {
        "B": args.B,
        "pmf_quadrature": [float(p) for p in dist.pmf],
        "pmf_closed_form": [
            math.comb(args.B, l) * orthant_probability_closed_form(args.B, l)
            for l in range(args.B + 1)
        ],
        "cumulative": [float(c) for c in dist.cumulative()],
        "uniform_value": 1.0 / (args.B + 1),
    }
    if args.alpha is not None:
        if not 0.0 < args.alpha < 1.0:
            raise _CliError("alpha must lie in (0, 1)")
        config["alpha"] = args.alpha
        y = y_quantile(args.B, args.alpha)
        result["y_quantile"] = y
        result["nominal_exact"] = (y + 1) / (args.B + 1)
        if args.B == 9 and y == 8:
            # Genz-algorithm evaluation of the same level, kept for reference.
            result["nominal_genz_reference"] = GENZ_LEVEL_B9
    seed = _resolve_seed(args.seed)
    return {"manifest": _manifest("ydist", config, seed, args.timestamp), **result}


def _cmd_bound(args: argparse.Namespace) -> dict:
    seed = _resolve_seed(args.seed)
    if args.kind is not None:
        try:
            kind = _parse_rate_kind(args.kind)
        except ValueError as exc:
            raise _CliError(str(exc)) from exc
        if args.n is None or args.m is None:
            raise _CliError("rate evaluation requires --n and --m")
        config = {"kind": kind.value, "n": args.n, "m": args.m}
        return {
            "manifest": _manifest("bound", config, seed, args.timestamp),
            "rate": convergence_rate(kind, args.n, args.m),
        }
    required = {"n": args.n, "m": args.m, "delta": args.delta, "eps": args.eps,
                "eps1": args.eps1, "eps2": args.eps2, "ratio": args.ratio}
    missing = [k for k, v in required.items() if v is None]
    if missing:
        raise _CliError(f"bound evaluation requires --{', --'.join(missing)}")
    try:
        params = BoundParams(
            n=args.n, m=args.m, delta=args.delta, eps=args.eps,
            eps1=args.eps1, eps2=args.eps2,
            third_abs_moment_ratio=args.ratio,
            p_var_dev=args.p_var_dev, C=args.C,
        )
        first, second = bound_terms(params, part=args.part)
    except PivotbootError as exc:
        raise _CliError(str(exc)) from exc
    config = {
        "n": args.n, "m": args.m, "delta": args.delta, "eps": args.eps,
        "eps1": args.eps1, "eps2": args.eps2, "ratio": args.ratio,
        "p_var_dev": args.p_var_dev, "C": args.C, "part": args.part,
    }
    return {
        "manifest": _manifest("bound", config, seed, args.timestamp),
        "delta_n": delta_n(params),
        "first_term": first,
        "second_term": second,
        "total": first + second,
    }


def _cmd_weights(args: argparse.Namespace) -> dict:
    if args.n is None or args.m is None:
        raise _CliError("weights requires --n and --m")
    if args.n < 1 or args.m < 1:
        raise _CliError("n and m must be at least 1")
    seed = _resolve_seed(args.seed)
    w = draw_multinomial_weights(args.n, args.m, substream(seed, "cli.weights"))
    config = {"n": args.n, "m": args.m}
    return {
        "manifest": _manifest("weights", config, seed, args.timestamp),
        "counts": [int(c) for c in w.counts],
        "m": int(w.m),
        "scheme": w.scheme.value,
    }


def _parse_rate_kind(text: str) -> RateKind:
    squashed = text.lower().replace("-", "").replace("_", "")
    squashed = squashed.removesuffix("rate")
    mapping = {
        "gstar": RateKind.G_STAR_RATE,
        "tstar": RateKind.T_STAR_RATE,
        "gdoublestar": RateKind.G_DOUBLE_STAR_RATE,
        "tdoublestar": RateKind.T_DOUBLE_STAR_RATE,
    }
    kind = mapping.get(squashed)
    if kind is None:
        raise ValueError(f"unknown rate kind {text!r}")
    return kind


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pivotboot",
        description="Weighted-resampling pivots, confidence intervals, and coverage experiments.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=None,
                       help=f"master seed (default: ${SEED_ENV_VAR} or a fresh random seed)")
        p.add_argument("--timestamp", default=None,
                       help="manifest timestamp override, for byte-identical reruns")

    p_ci = sub.add_parser("ci", help="confidence interval from a data file")
    p_ci.add_argument("data", help="text file, one number per line ('#' comments allowed)")
    p_ci.add_argument("--method", choices=_CI_METHODS, required=True)
    p_ci.add_argument("--alpha", type=float, default=0.1)
    p_ci.add_argument("--m", type=int, default=None, help="resample size for a drawn weight vector")
    p_ci.add_argument("--weights-file", default=None, help="read weights instead of drawing them")
    p_ci.add_argument("--x", type=float, default=None, help="evaluation point for ecdf/cdf methods")
    add_common(p_ci)
    p_ci.set_defaults(func=_cmd_ci)

    p_table = sub.add_parser("table", help="run one design point of a comparison table")
    p_table.add_argument("--which", type=int, choices=(1, 2), required=True)
    p_table.add_argument("--model", required=True, help=f"one of {sorted(MODELS)}")
    p_table.add_argument("--n", type=int, required=True)
    p_table.add_argument("--m", type=int, default=None)
    p_table.add_argument("--outer", type=int, default=500)
    p_table.add_argument("--inner", type=int, default=500)
    p_table.add_argument("--threshold", type=float, default=None)
    p_table.add_argument("--nominal", type=float, default=None)
    p_table.add_argument("--band", type=float, default=0.01)
    p_table.add_argument("--B", type=int, default=9)
    p_table.add_argument("--threads", type=int, default=1)
    output = p_table.add_mutually_exclusive_group()
    output.add_argument("--json", dest="text", action="store_false", default=False)
    output.add_argument("--text", dest="text", action="store_true")
    add_common(p_table)
    p_table.set_defaults(func=_cmd_table)

    p_ydist = sub.add_parser("ydist", help="replicate-count distribution and refined cutoff")
    p_ydist.add_argument("--B", type=int, required=True)
    p_ydist.add_argument("--alpha", type=float, default=None)
    add_common(p_ydist)
    p_ydist.set_defaults(func=_cmd_ydist)

    p_bound = sub.add_parser("bound", help="error-bound evaluation or rate function")
    p_bound.add_argument("--kind", default=None,
                         help="rate kind (GStarRate, TStarRate, GDoubleStarRate, TDoubleStarRate)")
    p_bound.add_argument("--n", type=int, default=None)
    p_bound.add_argument("--m", type=int, default=None)
    p_bound.add_argument("--delta", type=float, default=None)
    p_bound.add_argument("--eps", type=float, default=None)
    p_bound.add_argument("--eps1", type=float, default=None)
    p_bound.add_argument("--eps2", type=float, default=None)
    p_bound.add_argument("--ratio", type=float, default=None,
                         help="third absolute moment ratio E|X-mu|^3 / sigma^(3/2)")
    p_bound.add_argument("--p-var-dev", type=float, default=0.0)
    p_bound.add_argument("--C", type=float, default=0.56)
    p_bound.add_argument("--part", choices=("A", "B"), default="A")
    add_common(p_bound)
    p_bound.set_defaults(func=_cmd_bound)

    p_weights = sub.add_parser("weights", help="dump one multinomial weight draw")
    p_weights.add_argument("--n", type=int, required=True)
    p_weights.add_argument("--m", type=int, required=True)
    add_common(p_weights)
    p_weights.set_defaults(func=_cmd_weights)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except _CliError as exc:
        print(f"pivotboot: error: {exc}", file=sys.stderr)
        return exc.code
    except (PivotbootError, ValueError) as exc:
        print(f"pivotboot: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(result, str):
        print(result)
    else:
        print(dumps(result))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
