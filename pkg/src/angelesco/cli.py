"""Command-line driver: ``zeros``, ``sweep``, ``verify`` and ``limits``.

Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error,
3 solver failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cascade import diagonal_zeros
from .core import AngelescoParams, DomainError, validate_params
from .gram_oracle import MonicPolynomial, ZeroSet, build_type2_polynomial, localize_roots, orthogonality_residual
from .limits import JacobiLaguerreParams, LaguerreHermiteParams, jl_build, lh_build, limit_check_jl, limit_check_lh
from .report import column_trend
from .verification import JL_SCALES, LH_SCALES, SUITES, ConfigError, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_SOLVER = 3

FAMILIES = {
    "ja": "jacobi-angelesco",
    "jacobi-angelesco": "jacobi-angelesco",
    "jl": "jacobi-laguerre",
    "jacobi-laguerre": "jacobi-laguerre",
    "lh": "laguerre-hermite",
    "laguerre-hermite": "laguerre-hermite",
}
SWEEPABLE = {
    "jacobi-angelesco": ("alpha", "beta", "gamma"),
    "jacobi-laguerre": ("alpha", "beta"),
    "laguerre-hermite": ("beta",),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x: float) -> str:
    """17 significant digits, which round-trips every double."""
    return format(float(x), ".17g")


def _family(name: str) -> str:
    try:
        return FAMILIES[name]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown family {name!r}") from None


def _float_list(text: str | None) -> list[float] | None:
    if text is None:
        return None
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _single(text: str | None, name: str, default: float) -> float:
    values = _float_list(text)
    if values is None:
        return default
    if len(values) != 1:
        raise UsageError(f"--{name} takes a single value here")
    return values[0]


# ---------------------------------------------------------------- zero solvers


@dataclass
class FamilyConfig:
    family: str
    a: float
    alpha: float
    beta: float
    gamma: float

    def validate(self) -> None:
        if self.family == "jacobi-angelesco":
            validate_params(self.ja())
        elif self.family == "jacobi-laguerre":
            JacobiLaguerreParams(self.a, self.alpha, self.beta)
        else:
            LaguerreHermiteParams(self.beta)

    def ja(self) -> AngelescoParams:
        return AngelescoParams(self.a, self.alpha, self.beta, self.gamma)

    def with_value(self, name: str, value: float) -> "FamilyConfig":
        return FamilyConfig(**{**self.__dict__, name: value})


def solve_zeros(cfg: FamilyConfig, n: int, m: int, method: str, tol: float) -> tuple[ZeroSet, MonicPolynomial | None]:
    if cfg.family == "jacobi-angelesco":
        p = cfg.ja()
        if method == "cascade":
            if n != m:
                raise UsageError("the cascade handles only n = m; use --method gram")
            return diagonal_zeros(p, n, tol), None
        poly = build_type2_polynomial(p, n, m)
        return localize_roots(poly, p, n, m), poly
    if cfg.family == "jacobi-laguerre":
        poly, zeros = jl_build(JacobiLaguerreParams(cfg.a, cfg.alpha, cfg.beta), n, m)
    else:
        poly, zeros = lh_build(LaguerreHermiteParams(cfg.beta), n, m)
    return zeros, poly


def _product_polynomial(zeros: ZeroSet) -> MonicPolynomial:
    roots = np.asarray(zeros.all)
    coeffs = np.polynomial.polynomial.polyfromroots(roots)
    coeffs = coeffs / coeffs[-1]

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        return np.prod(x[..., None] - roots, axis=-1)

    return MonicPolynomial(tuple(float(c) for c in coeffs), evaluate)


# ---------------------------------------------------------------- commands


def cmd_zeros(args, out) -> int:
    cfg = _family_config(args)
    n = args.n
    m = args.m if args.m is not None else n
    if n < 0 or m < 0 or n + m == 0:
        raise UsageError("--n and --m must be nonnegative and not both zero")
    cfg.validate()
    method = args.method if cfg.family == "jacobi-angelesco" else "gram"
    zeros, _ = solve_zeros(cfg, n, m, method, args.tol)
    record = {
        "family": cfg.family,
        "method": method,
        "n": n,
        "m": m,
        "params": _params_dict(cfg),
        "zeros": {"negative": list(zeros.negative), "positive": list(zeros.positive)},
    }
    if cfg.family == "jacobi-angelesco":
        # independent check: the product form of the computed zeros against the weights
        record["orthogonality_residual"] = orthogonality_residual(_product_polynomial(zeros), cfg.ja(), n, m)
    if args.format == "json":
        out.write(json.dumps(record, indent=2) + "\n")
    else:
        out.write(f"# family={cfg.family} method={method} n={n} m={m} " + " ".join(f"{k}={fmt(v)}" for k, v in record["params"].items()) + "\n")
        for z in zeros.all:
            out.write(fmt(z) + "\n")
        if "orthogonality_residual" in record:
            out.write(f"# orthogonality_residual={fmt(record['orthogonality_residual'])}\n")
    return EXIT_OK


def sweep_values(start: float, stop: float, steps: int) -> list[float]:
    if steps < 2:
        raise UsageError("--steps must be at least 2")
    if not start < stop:
        raise UsageError("--from must be less than --to")
    width = (stop - start) / (steps - 1)
    return [round(start + i * width, 12) for i in range(steps)]


def run_sweep(cfg: FamilyConfig, param: str, values: Sequence[float], n: int, method: str, tol: float):
    if param not in SWEEPABLE[cfg.family]:
        raise UsageError(f"--param for {cfg.family} must be one of {', '.join(SWEEPABLE[cfg.family])}")
    if values[0] <= -1:
        raise UsageError(f"swept {param} must stay above -1")
    configs = [cfg.with_value(param, v) for v in values]
    for c in configs:
        c.validate()
    rows = [solve_zeros(c, n, n, method, tol)[0].all for c in configs]
    columns = list(zip(*rows))
    summary = []
    for j, col in enumerate(columns):
        trend = column_trend(col)
        summary.append({"column": f"z{j + 1}", "verdict": trend.verdict, "first_violation": trend.first_violation, "min_step": trend.min_step, "max_step": trend.max_step})
    return rows, summary


def render_csv(values: Sequence[float], rows: Sequence[Sequence[float]]) -> str:
    width = len(rows[0]) if rows else 0
    buf = io.StringIO()
    buf.write(",".join(["param"] + [f"z{j + 1}" for j in range(width)]) + "\n")
    for v, row in zip(values, rows):
        buf.write(",".join(fmt(x) for x in (v, *row)) + "\n")
    return buf.getvalue()


def parse_csv(text: str) -> tuple[list[float], list[list[float]]]:
    lines = text.strip("\n").split("\n")
    values, rows = [], []
    for line in lines[1:]:
        fields = [float(f) for f in line.split(",")]
        values.append(fields[0])
        rows.append(fields[1:])
    return values, rows


def write_svg(path: str, cfg: FamilyConfig, param: str, values, rows) -> None:
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        raise UsageError("--svg needs matplotlib (pip install 'artifact[plot]')") from None
    fig, ax = plt.subplots(figsize=(7, 5))
    for j, col in enumerate(zip(*rows)):
        ax.plot(values, col, lw=1.2, label=f"z{j + 1}")
    poles = {"jacobi-angelesco": (cfg.a, 0.0, 1.0), "jacobi-laguerre": (cfg.a, 0.0), "laguerre-hermite": (0.0,)}[cfg.family]
    for pole in poles:
        ax.axhline(pole, color="grey", ls="--", lw=0.8)
    ax.set_xlabel(param)
    ax.set_ylabel("zero")
    ax.set_title(f"{cfg.family} zeros, n={len(rows[0]) // 2}")
    ax.legend(fontsize="small", ncol=2)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def cmd_sweep(args, out) -> int:
    cfg = _family_config(args)
    if args.param is None:
        raise UsageError("sweep needs --param")
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    values = sweep_values(args.start, args.stop, args.steps)
    method = args.method if cfg.family == "jacobi-angelesco" else "gram"
    rows, summary = run_sweep(cfg, args.param, values, args.n, method, args.tol)
    if args.format == "json":
        text = json.dumps(
            {
                "family": cfg.family,
                "method": method,
                "n": args.n,
                "param": args.param,
                "fixed": _params_dict(cfg),
                "rows": [{"param": v, "zeros": list(r)} for v, r in zip(values, rows)],
                "monotonicity": summary,
            },
            indent=2,
        ) + "\n"
    else:
        text = render_csv(values, rows)
    _emit(text, args.out, out)
    for s in summary:
        at = "" if s["first_violation"] is None else f" (first violation at step {s['first_violation']})"
        print(f"{s['column']}: {s['verdict']}{at}", file=sys.stderr)
    if args.svg:
        write_svg(args.svg, cfg, args.param, values, rows)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.suite is None:
        raise UsageError("verify needs --suite")
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    overrides = {
        "n_max": args.n_max,
        "a": _float_list(args.a),
        "alpha": _float_list(args.alpha),
        "beta": _float_list(args.beta),
        "gamma": _float_list(args.gamma),
    }
    if args.start is not None or args.stop is not None:
        if args.start is None or args.stop is None:
            raise UsageError("--from and --to go together")
        overrides["values"] = sweep_values(args.start, args.stop, args.steps)
    report = run_suite(args.suite, **overrides)
    _emit(json.dumps(report.as_dict(), indent=2) + "\n", args.out, out)
    failed = len(report.failures())
    print(f"{report.suite}: {'pass' if report.passed else 'fail'} ({len(report.cases) - failed}/{len(report.cases)} cases, {report.elapsed_seconds:.2f}s)", file=sys.stderr)
    if args.suite == "expansion-diagnostic":
        return EXIT_OK
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_limits(args, out) -> int:
    cfg = _family_config(args)
    scales = _float_list(args.scales)
    if cfg.family == "laguerre-hermite":
        LaguerreHermiteParams(cfg.beta)
        result = limit_check_lh(cfg.beta, args.n, scales or LH_SCALES)
        scale_name = "alpha=gamma"
    elif cfg.family == "jacobi-laguerre":
        JacobiLaguerreParams(cfg.a, cfg.alpha, cfg.beta)
        result = limit_check_jl(cfg.alpha, cfg.beta, cfg.a, args.n, scales or JL_SCALES)
        scale_name = "gamma"
    else:
        raise UsageError("limits needs --family jl or lh")
    record = {
        "family": cfg.family,
        "n": args.n,
        "params": _params_dict(cfg),
        "scale": scale_name,
        "scale_values": list(result.scale_values),
        "errors": list(result.errors),
        "ratios": [r if math.isfinite(r) else None for r in result.ratios],
        "strictly_decreasing": result.strictly_decreasing,
    }
    if args.format == "csv":
        text = "scale,error\n" + "".join(f"{fmt(s)},{fmt(e)}\n" for s, e in zip(result.scale_values, result.errors))
    else:
        text = json.dumps(record, indent=2) + "\n"
    _emit(text, args.out, out)
    return EXIT_OK if result.strictly_decreasing else EXIT_FAIL


# ---------------------------------------------------------------- plumbing


def _family_config(args) -> FamilyConfig:
    return FamilyConfig(
        args.family,
        _single(args.a, "a", -1.0),
        _single(args.alpha, "alpha", 0.0),
        _single(args.beta, "beta", 0.0),
        _single(args.gamma, "gamma", 0.0),
    )


def _params_dict(cfg: FamilyConfig) -> dict:
    keys = {"jacobi-angelesco": ("a", "alpha", "beta", "gamma"), "jacobi-laguerre": ("a", "alpha", "beta"), "laguerre-hermite": ("beta",)}[cfg.family]
    return {k: getattr(cfg, k) for k in keys}


def _emit(text: str, path: str | None, out) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--family", type=_family, default="jacobi-angelesco", help="ja, jl or lh (long names accepted)")
    for name in ("a", "alpha", "beta", "gamma"):
        common.add_argument(f"--{name}", help="number; verify accepts a comma-separated list")
    common.add_argument("--n", type=int, default=1)
    common.add_argument("--method", choices=("cascade", "gram"), default="cascade")
    common.add_argument("--tol", type=float, default=1e-13)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", metavar="PATH")

    parser = _Parser(prog="angelesco", description="Zeros of Jacobi-Angelesco multiple orthogonal polynomials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    z = sub.add_parser("zeros", parents=[common], help="zeros of one polynomial")
    z.add_argument("--m", type=int, default=None, help="second index (gram only); defaults to --n")

    s = sub.add_parser("sweep", parents=[common], help="zero trajectories over one parameter")
    s.add_argument("--param", choices=("alpha", "beta", "gamma"))
    s.add_argument("--from", dest="start", type=float, default=0.0)
    s.add_argument("--to", dest="stop", type=float, default=3.0)
    s.add_argument("--steps", type=int, default=31)
    s.add_argument("--svg", metavar="PATH")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", help=", ".join(SUITES))
    v.add_argument("--n-max", type=int, default=None)
    v.add_argument("--from", dest="start", type=float, default=None)
    v.add_argument("--to", dest="stop", type=float, default=None)
    v.add_argument("--steps", type=int, default=60)

    lim = sub.add_parser("limits", parents=[common], help="convergence of scaled zeros to a limit family")
    lim.add_argument("--scales", help="ascending comma-separated scale values")
    return parser


COMMANDS = {"zeros": cmd_zeros, "sweep": cmd_sweep, "verify": cmd_verify, "limits": cmd_limits}
DEFAULT_FORMAT = {"zeros": "csv", "sweep": "csv", "verify": "json", "limits": "json"}


def _fail(kind: str, exc: BaseException, code: int) -> int:
    print(json.dumps({"error": kind, "type": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
    return code


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.format is None:
            args.format = DEFAULT_FORMAT[args.command]
        return COMMANDS[args.command](args, out)
    except (UsageError, ConfigError, argparse.ArgumentTypeError) as exc:
        return _fail("usage", exc, EXIT_USAGE)
    except DomainError as exc:
        # parameter validation happens before any solve, so this is a usage problem
        if type(exc).__name__ == "PoleError":
            return _fail("solver", exc, EXIT_SOLVER)
        return _fail("usage", exc, EXIT_USAGE)
    except Exception as exc:
        return _fail("solver", exc, EXIT_SOLVER)


if __name__ == "__main__":
    sys.exit(main())
