"""Named verification suites over parameter grids.

Each suite returns a :class:`~angelesco.report.VerificationReport`; solver
failures become failed cases rather than exceptions.
"""

from __future__ import annotations

import itertools
import math
import time
from typing import Callable, Iterable, Sequence

from .cascade import cascade_ladder, diagonal_zeros
from .classical import expansion_diagnostic
from .core import AngelescoParams
from .gram_oracle import oracle_zeros
from .limits import LaguerreHermiteParams, corollary_checks, lh_build, limit_check_jl, limit_check_lh
from .report import DECREASING, INCREASING, VerificationReport, column_trend, grid

__all__ = [
    "ConfigError",
    "SUITES",
    "run_suite",
    "interlacing_margin",
    "symmetry_defect",
]

ORACLE_TOL = 1e-8
SYMMETRY_TOL = 1e-10

DEFAULT_EXPONENTS = (-0.5, 0.0, 0.5, 2.0)
DEFAULT_ENDPOINTS = (-2.0, -1.0, -0.25)
SWEEP_RANGE = (-0.9, 5.0, 0.1)


class ConfigError(ValueError):
    """A suite was asked to run outside the hypotheses it checks."""


def interlacing_margin(coarse: Sequence[float], fine: Sequence[float]) -> float:
    """Smallest gap in ``fine[0] < coarse[0] < fine[1] < ... < coarse[-1] < fine[-1]``; negative if violated."""
    if len(fine) != len(coarse) + 1:
        raise ValueError("interlacing needs one more fine zero than coarse zeros")
    merged = [fine[0]]
    for c, f in zip(coarse, fine[1:]):
        merged += [c, f]
    return min((b - a for a, b in zip(merged, merged[1:])), default=math.inf)


def symmetry_defect(zeros) -> float:
    return max((abs(x + y) for x, y in zip(zeros.negative, reversed(zeros.positive))), default=0.0)


def _params_grid(a_values, alpha_values, beta_values, gamma_values) -> Iterable[AngelescoParams]:
    for a, al, be, ga in itertools.product(a_values, alpha_values, beta_values, gamma_values):
        yield AngelescoParams(a, al, be, ga)


def _guard(report: VerificationReport, inputs: dict, fn: Callable[[], None]) -> None:
    try:
        fn()
    except Exception as exc:  # solver failures are recorded, not raised
        report.add(inputs, False, -math.inf, f"{type(exc).__name__}: {exc}")


def _as_inputs(p: AngelescoParams, **extra) -> dict:
    return {"a": p.a, "alpha": p.alpha, "beta": p.beta, "gamma": p.gamma, **extra}


def suite_interlacing(n_max=6, a=DEFAULT_ENDPOINTS, alpha=DEFAULT_EXPONENTS, beta=DEFAULT_EXPONENTS, gamma=DEFAULT_EXPONENTS):
    """Consecutive ladder levels interlace, for every ladder ``n = 2..n_max`` (each ``n`` has its own shifts)."""
    report = VerificationReport("interlacing", {"n_max": n_max, "a": list(a), "alpha": list(alpha), "beta": list(beta), "gamma": list(gamma)})
    for p in _params_grid(a, alpha, beta, gamma):
        for n in range(2, n_max + 1):
            inputs = _as_inputs(p, n=n)

            def check(p=p, n=n, inputs=inputs):
                levels = cascade_ladder(p, n)
                worst = math.inf
                where = ""
                for lower, upper in zip(levels, levels[1:]):
                    for side in ("negative", "positive"):
                        margin = interlacing_margin(getattr(lower.zeros, side), getattr(upper.zeros, side))
                        if margin < worst:
                            worst, where = margin, f"levels {lower.k}->{upper.k}, {side} side"
                report.add(inputs, worst > 0, worst, f"smallest gap at {where}")

            _guard(report, inputs, check)
    return report


def suite_oracle_equivalence(n_max=6, a=DEFAULT_ENDPOINTS, alpha=DEFAULT_EXPONENTS, beta=DEFAULT_EXPONENTS, gamma=DEFAULT_EXPONENTS):
    report = VerificationReport(
        "oracle-equivalence", {"n_max": n_max, "tolerance": ORACLE_TOL, "a": list(a), "alpha": list(alpha), "beta": list(beta), "gamma": list(gamma)}
    )
    deviations = []
    for p in _params_grid(a, alpha, beta, gamma):
        for n in range(1, n_max + 1):
            inputs = _as_inputs(p, n=n)

            def check(p=p, n=n, inputs=inputs):
                fast = diagonal_zeros(p, n)
                slow = oracle_zeros(p, n, n)
                dev = max(abs(x - y) for x, y in zip(fast.all, slow.all))
                deviations.append(dev)
                report.add(inputs, dev <= ORACLE_TOL, ORACLE_TOL - dev, f"max deviation {dev:.3e}")

            _guard(report, inputs, check)
    report.notes["max_deviation"] = max(deviations, default=0.0)
    return report


def _sweep_zeros(make: Callable[[float], AngelescoParams], values: Sequence[float], n: int):
    return [diagonal_zeros(make(v), n) for v in values]


def _monotone_suite(name, swept, expected_for, n_max, a, fixed_a, fixed_b, other_names, values):
    report = VerificationReport(
        name,
        {"n_max": n_max, "swept": swept, "from": values[0], "to": values[-1], "steps": len(values), "a": list(a), other_names[0]: list(fixed_a), other_names[1]: list(fixed_b)},
    )
    for endpoint, u, w in itertools.product(a, fixed_a, fixed_b):
        for n in range(1, n_max + 1):
            fixed = {"a": endpoint, other_names[0]: u, other_names[1]: w}

            def make(v, fixed=fixed):
                return AngelescoParams(**fixed, **{swept: v})

            inputs = {**fixed, "n": n, "swept": swept}

            def check(n=n, make=make, inputs=inputs):
                zero_sets = _sweep_zeros(make, values, n)
                expected = expected_for(n)
                worst = math.inf
                details = []
                for j, direction in enumerate(expected):
                    trend = column_trend([z.all[j] for z in zero_sets])
                    margin = trend.margin_for(direction)
                    worst = min(worst, margin)
                    if trend.verdict != direction:
                        at = "" if trend.first_violation is None else f" at step {trend.first_violation}"
                        details.append(f"z{j + 1}: {trend.verdict}{at}")
                report.add(inputs, not details, worst, "; ".join(details) or "all columns as expected")

            _guard(report, inputs, check)
    return report


def suite_monotone_alpha(n_max=4, a=(-1.0, -0.5), beta=(0.0, 1.0), gamma=(0.0, 1.0), values=None):
    values = values or grid(*SWEEP_RANGE)
    return _monotone_suite("monotone-alpha", "alpha", lambda n: [INCREASING] * (2 * n), n_max, a, beta, gamma, ("beta", "gamma"), values)


def suite_monotone_gamma(n_max=4, a=(-1.0, -0.5), alpha=(0.0, 1.0), beta=(0.0, 1.0), values=None):
    values = values or grid(*SWEEP_RANGE)
    return _monotone_suite("monotone-gamma", "gamma", lambda n: [DECREASING] * (2 * n), n_max, a, alpha, beta, ("alpha", "beta"), values)


def _beta_expected(n):
    return [DECREASING] * n + [INCREASING] * n


def suite_monotone_beta_symmetric(n_max=4, a=(-1.0,), alpha=None, gamma=None, values=None):
    if any(v != -1.0 for v in a):
        raise ConfigError("monotone-beta-symmetric requires a = -1")
    if alpha is not None and gamma is not None and list(gamma) != list(alpha):
        raise ConfigError("monotone-beta-symmetric requires alpha = gamma")
    alpha = alpha or gamma or (0.0, 0.5, 2.0)
    values = values or grid(*SWEEP_RANGE)
    report = VerificationReport("monotone-beta-symmetric", {"n_max": n_max, "a": -1.0, "alpha=gamma": list(alpha), "beta_from": values[0], "beta_to": values[-1], "steps": len(values)})
    for lam in alpha:
        for n in range(1, n_max + 1):
            inputs = {"a": -1.0, "alpha": lam, "gamma": lam, "n": n, "swept": "beta"}

            def check(lam=lam, n=n, inputs=inputs):
                zero_sets = _sweep_zeros(lambda b: AngelescoParams(-1.0, lam, b, lam), values, n)
                worst = math.inf
                details = []
                for j, direction in enumerate(_beta_expected(n)):
                    trend = column_trend([z.all[j] for z in zero_sets])
                    worst = min(worst, trend.margin_for(direction))
                    if trend.verdict != direction:
                        details.append(f"z{j + 1}: {trend.verdict}")
                sym = max(symmetry_defect(z) for z in zero_sets)
                if sym > SYMMETRY_TOL:
                    details.append(f"symmetry defect {sym:.3e}")
                report.add(inputs, not details, worst, "; ".join(details) or f"symmetry defect {sym:.3e}")

            _guard(report, inputs, check)
    return report


def suite_monotone_beta_exploratory(n_max=3, a=(-1.0, -0.5, -2.0), alpha=(0.0, 1.0), gamma=(0.0, 1.0), values=None):
    """Same verdicts as the symmetric suite, outside the proven case; informational only."""
    values = values or grid(-0.9, 3.0, 0.1)
    report = _monotone_suite("monotone-beta-exploratory", "beta", _beta_expected, n_max, a, alpha, gamma, ("alpha", "gamma"), values)
    report.notes["gating"] = "exploratory: outside a=-1, alpha=gamma the beta behaviour is only conjectured"
    return report


def suite_symmetry(n_max=6, alpha=(-0.5, 0.0, 0.5, 2.0), beta=DEFAULT_EXPONENTS):
    report = VerificationReport("symmetry", {"n_max": n_max, "a": -1.0, "alpha=gamma": list(alpha), "beta": list(beta), "tolerance": SYMMETRY_TOL})
    for lam, b in itertools.product(alpha, beta):
        for n in range(1, n_max + 1):
            p = AngelescoParams(-1.0, lam, b, lam)
            inputs = _as_inputs(p, n=n, method="cascade")

            def check(p=p, n=n, inputs=inputs):
                d = symmetry_defect(diagonal_zeros(p, n))
                report.add(inputs, d <= SYMMETRY_TOL, SYMMETRY_TOL - d, f"defect {d:.3e}")

            _guard(report, inputs, check)
    for b in beta:
        for n in range(1, min(n_max, 4) + 1):
            inputs = {"family": "laguerre-hermite", "beta": b, "n": n}

            def check_lh(b=b, n=n, inputs=inputs):
                d = symmetry_defect(lh_build(LaguerreHermiteParams(b), n, n)[1])
                report.add(inputs, d <= SYMMETRY_TOL, SYMMETRY_TOL - d, f"defect {d:.3e}")

            _guard(report, inputs, check_lh)
    return report


LH_SCALES = (50.0, 100.0, 200.0, 400.0, 800.0)
JL_SCALES = (50.0, 100.0, 200.0, 400.0)
RATIO_BAND = (0.45, 0.55)


def suite_limits(n_max=2):
    report = VerificationReport("limits", {"n_max": n_max, "lh_alpha": list(LH_SCALES), "jl_gamma": list(JL_SCALES), "ratio_band": list(RATIO_BAND)})

    def lh_closed_form():
        res = limit_check_lh(0.0, 1, LH_SCALES)
        exact = [abs(math.sqrt(s / (2 * s + 3)) - math.sqrt(0.5)) for s in LH_SCALES]
        dev = max(abs(e - x) for e, x in zip(res.errors, exact))
        in_band = all(RATIO_BAND[0] <= r <= RATIO_BAND[1] for r in res.ratios)
        ok = dev <= 1e-10 and res.strictly_decreasing and in_band
        detail = f"closed-form deviation {dev:.3e}; errors {list(res.errors)}; ratios {list(res.ratios)}"
        report.add({"family": "laguerre-hermite", "n": 1, "beta": 0.0}, ok, 1e-10 - dev, detail)

    _guard(report, {"family": "laguerre-hermite", "n": 1, "beta": 0.0}, lh_closed_form)
    for n in range(1, n_max + 1):
        inputs = {"family": "jacobi-laguerre", "n": n, "alpha": 0.0, "beta": 0.0, "a": -1.0}

        def jl(n=n, inputs=inputs):
            res = limit_check_jl(0.0, 0.0, -1.0, n, JL_SCALES)
            margin = min(a - b for a, b in zip(res.errors, res.errors[1:]))
            report.add(inputs, res.strictly_decreasing, margin, f"errors {list(res.errors)}; ratios {list(res.ratios)}")

        _guard(report, inputs, jl)
        if n > 1:
            inputs_lh = {"family": "laguerre-hermite", "n": n, "beta": 0.0}

            def lh(n=n, inputs=inputs_lh):
                res = limit_check_lh(0.0, n, LH_SCALES)
                margin = min(a - b for a, b in zip(res.errors, res.errors[1:]))
                report.add(inputs, res.strictly_decreasing, margin, f"errors {list(res.errors)}; ratios {list(res.ratios)}")

            _guard(report, inputs_lh, lh)
    return report


def suite_corollaries(n_max=3):
    return corollary_checks(n_max)


def suite_expansion_diagnostic(n_max=4, lam=(0.5, 1.0, 2.0), beta=(0.0, 1.0)):
    report = VerificationReport("expansion-diagnostic", {"n_max": n_max, "lambda": list(lam), "beta": list(beta)})
    report.notes["gating"] = "report only: agreement with the oracle is measured, not asserted"
    for n, l, b in itertools.product(range(1, n_max + 1), lam, beta):
        inputs = {"n": n, "lambda": l, "beta": b}

        def check(n=n, l=l, b=b, inputs=inputs):
            r = expansion_diagnostic(n, l, b)
            detail = f"coefficient difference {r.coefficient_difference:.6g}; zero distance {r.zero_distance:.6g}"
            report.add(inputs, r.odd_residual == 0.0, -r.odd_residual, detail)

        _guard(report, inputs, check)
    return report


SUITES: dict[str, Callable[..., VerificationReport]] = {
    "interlacing": suite_interlacing,
    "oracle-equivalence": suite_oracle_equivalence,
    "monotone-alpha": suite_monotone_alpha,
    "monotone-gamma": suite_monotone_gamma,
    "monotone-beta-symmetric": suite_monotone_beta_symmetric,
    "monotone-beta-exploratory": suite_monotone_beta_exploratory,
    "symmetry": suite_symmetry,
    "limits": suite_limits,
    "corollaries": suite_corollaries,
    "expansion-diagnostic": suite_expansion_diagnostic,
}


def run_suite(name: str, **overrides) -> VerificationReport:
    """Run a named suite; ``overrides`` replace its default grid axes."""
    try:
        suite = SUITES[name]
    except KeyError:
        raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    overrides = {k: v for k, v in overrides.items() if v is not None}
    accepted = suite.__code__.co_varnames[: suite.__code__.co_argcount]
    unknown = set(overrides) - set(accepted)
    if unknown:
        raise ConfigError(f"suite {name!r} does not take {', '.join(sorted(unknown))}")
    for key in ("alpha", "beta", "gamma"):
        if key in overrides and any(not v > -1 for v in overrides[key]):
            raise ConfigError(f"{key} values must exceed -1")
    if "a" in overrides and any(not v < 0 for v in overrides["a"]):
        raise ConfigError("a values must be negative")
    start = time.perf_counter()
    report = suite(**overrides)
    report.elapsed_seconds = time.perf_counter() - start
    return report
