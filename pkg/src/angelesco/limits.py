"""Jacobi-Laguerre and Laguerre-Hermite multiple orthogonal polynomials, and their limits.

Jacobi-Laguerre: weight ``(x - a)**alpha |x|**beta exp(-x)`` on ``[a, 0]`` and ``[0, inf)``.
Laguerre-Hermite: weight ``|x|**beta exp(-x**2)`` on ``(-inf, 0]`` and ``[0, inf)``.

Both arise from Jacobi-Angelesco polynomials by rescaling: letting
``gamma -> inf`` with endpoint ``a/gamma`` and zeros scaled by ``gamma``, or
``alpha = gamma -> inf`` with ``a = -1`` and zeros scaled by ``sqrt(alpha)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from numpy.polynomial import Chebyshev, HermiteE, Laguerre

from .cascade import diagonal_zeros
from .core import AngelescoParams, DomainError
from .gram_oracle import (
    LocalizationError,
    MonicPolynomial,
    SingularSystemError,
    ZeroSet,
    bisect_brackets,
    build_split_polynomial,
    find_sign_changes,
    solve_orthogonality_system,
)
from .quadrature import gamma_function, gauss_rule
from .report import DECREASING, INCREASING, VerificationReport, column_trend, grid

__all__ = [
    "JacobiLaguerreParams",
    "LaguerreHermiteParams",
    "LimitCheckResult",
    "lh_moment",
    "lh_build",
    "jl_build",
    "jl_orthogonality_residual",
    "limit_check_jl",
    "limit_check_lh",
    "corollary_checks",
]

MONOMIAL_DEGREE_LIMIT = 8
WINDOW_DOUBLINGS = 10


@dataclass(frozen=True)
class JacobiLaguerreParams:
    a: float
    alpha: float
    beta: float

    def __post_init__(self):
        if not self.a < 0:
            raise DomainError(f"a must be negative, got a={self.a}")
        for name in ("alpha", "beta"):
            if not getattr(self, name) > -1:
                raise DomainError(f"{name} must exceed -1, got {name}={getattr(self, name)}")


@dataclass(frozen=True)
class LaguerreHermiteParams:
    beta: float

    def __post_init__(self):
        if not self.beta > -1:
            raise DomainError(f"beta must exceed -1, got beta={self.beta}")


@dataclass(frozen=True)
class LimitCheckResult:
    scale_values: tuple[float, ...]
    errors: tuple[float, ...]
    ratios: tuple[float, ...]

    @property
    def strictly_decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.errors, self.errors[1:]))


def lh_moment(k: int, beta: float, side: str) -> float:
    """``int x**k |x|**beta exp(-x**2)`` over the negative or positive half-line."""
    if not beta > -1:
        raise DomainError(f"beta must exceed -1, got {beta}")
    value = 0.5 * gamma_function((k + beta + 1.0) / 2.0)
    if side == "positive":
        return value
    if side == "negative":
        return -value if k % 2 else value
    raise DomainError(f"side must be 'negative' or 'positive', got {side!r}")


def _window_zeros(func, count: int, sign: float, degree: int, context: str) -> np.ndarray:
    """``count`` zeros of ``func`` on the half-line ``sign * (0, inf)``, by an expanding window."""
    if count == 0:
        return np.empty(0)
    width = 4.0 * degree + 8.0
    for _ in range(WINDOW_DOUBLINGS):
        lo, hi = (0.0, width) if sign > 0 else (-width, 0.0)
        try:
            brackets = find_sign_changes(func, lo, hi, count, context, max_refinements=6)
        except LocalizationError:
            width *= 2.0
            continue
        return bisect_brackets(func, brackets)
    raise LocalizationError(f"could not find {count} zeros on the {'positive' if sign > 0 else 'negative'} half-line for {context}")


# Laguerre-Hermite


@lru_cache(maxsize=64)
def _half_line_rule(beta: float, side: str, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Signed nodes/weights, exact for polynomials of degree < 4m, for ``int g |x|**beta exp(-x**2)`` on one half-line.

    With ``u = x**2`` the even part of ``g`` becomes a polynomial against
    ``u**((beta-1)/2) exp(-u)`` and the odd part, divided by ``sqrt(u)``, a
    polynomial against ``u**(beta/2) exp(-u)``.
    """
    even = gauss_rule(m, "laguerre", (beta - 1.0) / 2.0)
    odd = gauss_rule(m, "laguerre", beta / 2.0)
    xe = np.sqrt(even.nodes)
    xo = np.sqrt(odd.nodes)
    nodes = np.concatenate([xe, -xe, xo, -xo])
    weights = np.concatenate([even.weights / 4.0, even.weights / 4.0, odd.weights / (4.0 * xo), -odd.weights / (4.0 * xo)])
    if side == "negative":
        nodes = -nodes
    return nodes, weights


def _lh_monomial(beta: float, n: int, m: int) -> MonicPolynomial:
    total = n + m
    rows = []
    for side, count in (("negative", n), ("positive", m)):
        moments = [lh_moment(j, beta, side) for j in range(count + total)]
        rows += [[moments[k + j] for j in range(total + 1)] for k in range(count)]
    system = np.array(rows)
    a, rhs = system[:, :total], -system[:, total]
    cond = np.linalg.cond(a, 1)
    if not cond <= 1e14:
        raise SingularSystemError(f"Laguerre-Hermite moment system condition {cond:.3e} for beta={beta}, n={n}, m={m}")
    c = np.linalg.solve(a, rhs)
    return MonicPolynomial(tuple(float(v) for v in c) + (1.0,))


def _lh_hermite(beta: float, n: int, m: int) -> MonicPolynomial:
    total = n + m
    basis = [HermiteE.basis(j) for j in range(total)]
    leading = HermiteE.basis(total)  # monic already
    conditions = [(HermiteE.basis(k), lambda s: _half_line_rule(beta, "negative", s)) for k in range(n)]
    conditions += [(HermiteE.basis(k), lambda s: _half_line_rule(beta, "positive", s)) for k in range(m)]
    c = solve_orthogonality_system(basis, leading, conditions, total + 8, f"beta={beta}, n={n}, m={m}")
    series = HermiteE(np.append(c, 1.0))
    coeffs = series.convert(kind=np.polynomial.Polynomial).coef
    return MonicPolynomial(tuple(float(v) for v in coeffs[:total]) + (1.0,), series)


def lh_build(p: LaguerreHermiteParams, n: int, m: int) -> tuple[MonicPolynomial, ZeroSet]:
    """Laguerre-Hermite polynomial ``H_{n,m}`` and its zeros.

    Up to degree 8 the conditions are solved in the monomial basis from the
    closed-form moments; above that a HermiteE basis is used with a
    polynomial-exact half-line rule.
    """
    if n < 0 or m < 0 or n + m < 1:
        raise DomainError("need n, m >= 0 and n + m >= 1")
    if n + m <= MONOMIAL_DEGREE_LIMIT:
        poly = _lh_monomial(p.beta, n, m)
    else:
        poly = _lh_hermite(p.beta, n, m)
    context = f"Laguerre-Hermite beta={p.beta}, n={n}, m={m}"
    negative = _window_zeros(poly, n, -1.0, n + m, context)
    positive = _window_zeros(poly, m, 1.0, n + m, context)
    return poly, ZeroSet(tuple(map(float, negative)), tuple(map(float, positive)))


# Jacobi-Laguerre


@lru_cache(maxsize=256)
def _jl_rule(p: JacobiLaguerreParams, side: str, m: int) -> tuple[np.ndarray, np.ndarray]:
    if side == "left":
        rule = gauss_rule(m, "jacobi", p.beta, p.alpha)
        half = -p.a / 2.0
        x = p.a * (1.0 - rule.nodes) / 2.0
        return x, rule.weights * half ** (p.alpha + p.beta + 1.0) * np.exp(-x)
    rule = gauss_rule(m, "laguerre", p.beta)
    x = rule.nodes
    return x, rule.weights * (x - p.a) ** p.alpha


def jl_build(p: JacobiLaguerreParams, n: int, m: int) -> tuple[MonicPolynomial, ZeroSet]:
    """Jacobi-Laguerre polynomial ``L_{n,m}`` and its zeros.

    Chebyshev polynomials on ``[a, 0]`` and Laguerre polynomials on the
    half-line serve as test functions and as the split representation.
    """
    if n < 0 or m < 0 or n + m < 1:
        raise DomainError("need n, m >= 0 and n + m >= 1")
    context = f"Jacobi-Laguerre {p}, n={n}, m={m}"
    poly = build_split_polynomial(
        n,
        m,
        lambda k: Chebyshev.basis(k, domain=[p.a, 0.0]),
        Laguerre.basis,
        lambda s: _jl_rule(p, "left", s),
        lambda s: _jl_rule(p, "right", s),
        context,
    )
    negative = bisect_brackets(poly, find_sign_changes(poly, p.a, 0.0, n, context))
    positive = _window_zeros(poly, m, 1.0, n + m, context)
    return poly, ZeroSet(tuple(map(float, negative)), tuple(map(float, positive)))


def jl_orthogonality_residual(poly, p: JacobiLaguerreParams, n: int, m: int) -> float:
    """Largest ``|int x**k L w| / int |x**k L| w`` over the conditions.

    The per-condition scale matters on the half-line, where ``x**k`` reaches
    tens to the ``k``-th power and a single ``int |L| w`` scale would report
    cancellation rather than error.
    """
    worst = 0.0
    for side, count in (("left", n), ("right", m)):
        if count == 0:
            continue
        x, w = _jl_rule(p, side, 2 * (n + m) + 64)
        values = poly(x)
        for k in range(count):
            weighted = w * x**k * values
            worst = max(worst, abs(float(weighted.sum())) / float(np.abs(weighted).sum()))
    return worst


# limits


def _max_distance(a: ZeroSet, b: ZeroSet) -> float:
    return max(abs(x - y) for x, y in zip(a.all, b.all))


def _ratios(errors: Sequence[float]) -> tuple[float, ...]:
    return tuple(b / a if a else math.inf for a, b in zip(errors, errors[1:]))


def limit_check_jl(alpha: float, beta: float, a: float, n: int, gamma_values: Sequence[float]) -> LimitCheckResult:
    """Distance between ``gamma``-scaled Jacobi-Angelesco zeros (endpoint ``a/gamma``) and Jacobi-Laguerre zeros."""
    values = tuple(float(g) for g in gamma_values)
    if any(g <= 0 for g in values) or any(b <= a_ for a_, b in zip(values, values[1:])):
        raise DomainError("gamma_values must be positive and ascending")
    _, target = jl_build(JacobiLaguerreParams(a, alpha, beta), n, n)
    errors = []
    for g in values:
        zeros = diagonal_zeros(AngelescoParams(a / g, alpha, beta, g), n)
        scaled = ZeroSet(tuple(g * z for z in zeros.negative), tuple(g * z for z in zeros.positive))
        errors.append(_max_distance(scaled, target))
    return LimitCheckResult(values, tuple(errors), _ratios(errors))


def limit_check_lh(beta: float, n: int, alpha_values: Sequence[float]) -> LimitCheckResult:
    """Distance between ``sqrt(A)``-scaled Jacobi-Angelesco zeros (``a=-1``, ``alpha=gamma=A``) and Laguerre-Hermite zeros."""
    values = tuple(float(v) for v in alpha_values)
    if any(v <= 0 for v in values) or any(b <= a for a, b in zip(values, values[1:])):
        raise DomainError("alpha_values must be positive and ascending")
    _, target = lh_build(LaguerreHermiteParams(beta), n, n)
    errors = []
    for big in values:
        zeros = diagonal_zeros(AngelescoParams(-1.0, big, beta, big), n)
        s = math.sqrt(big)
        scaled = ZeroSet(tuple(s * z for z in zeros.negative), tuple(s * z for z in zeros.positive))
        errors.append(_max_distance(scaled, target))
    return LimitCheckResult(values, tuple(errors), _ratios(errors))


def _check_trajectories(report, family, n, fixed, swept, values, zero_sets, expected):
    table = np.array([z.all for z in zero_sets])
    for j, direction in enumerate(expected):
        trend = column_trend(table[:, j])
        margin = trend.margin_for(direction)
        detail = trend.verdict
        if trend.first_violation is not None:
            i = trend.first_violation
            detail += f"; first violation between {swept}={values[i]} and {values[i + 1]}"
        report.add({"family": family, "n": n, **fixed, "zero": j + 1, "expected": direction}, trend.verdict == direction, margin, detail)


def corollary_checks(
    n_max: int,
    lh_betas: Sequence[float] | None = None,
    jl_alphas: Sequence[float] | None = None,
    jl_betas: Sequence[float] = (0.0, 1.0),
    jl_a: float = -1.0,
) -> VerificationReport:
    """Monotonicity of Jacobi-Laguerre zeros in ``alpha`` and of Laguerre-Hermite zeros in ``beta``."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    lh_betas = list(lh_betas) if lh_betas is not None else grid(0.0, 3.0, 0.1)
    jl_alphas = list(jl_alphas) if jl_alphas is not None else grid(0.0, 3.0, 0.5)
    report = VerificationReport(
        "corollaries",
        {"n_max": n_max, "lh_beta": lh_betas, "jl_alpha": jl_alphas, "jl_beta": list(jl_betas), "jl_a": jl_a},
    )
    for n in range(1, n_max + 1):
        zero_sets = [lh_build(LaguerreHermiteParams(b), n, n)[1] for b in lh_betas]
        _check_trajectories(report, "laguerre-hermite", n, {}, "beta", lh_betas, zero_sets, [DECREASING] * n + [INCREASING] * n)
        for beta in jl_betas:
            zero_sets = [jl_build(JacobiLaguerreParams(jl_a, al, beta), n, n)[1] for al in jl_alphas]
            _check_trajectories(
                report, "jacobi-laguerre", n, {"a": jl_a, "beta": beta}, "alpha", jl_alphas, zero_sets, [INCREASING] * (2 * n)
            )
    return report
