"""Gauss rules from recurrence coefficients, and weighted integrals on the two intervals.

Rules are built with the Golub-Welsch construction: nodes are the eigenvalues
of the symmetric tridiagonal Jacobi matrix, weights are the total mass times
the squared first eigenvector components.  The eigen-solve is an implicit-shift
QL iteration that only carries the first row of the eigenvector matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .core import AngelescoParams, DomainError

__all__ = [
    "ConvergenceError",
    "QuadratureRule",
    "IntegralResult",
    "gamma_function",
    "jacobi_recurrence_coefficients",
    "laguerre_recurrence_coefficients",
    "tridiagonal_eigen",
    "gauss_rule",
    "interval_rule",
    "integrate_against_weight",
    "integrate_poly_against_weight",
]

MAX_QL_ITERATIONS = 50
MAX_DOUBLINGS = 12
# Golub-Welsch here is O(m**2) pure Python; larger rules are treated as non-convergence.
MAX_RULE_SIZE = 2048


class ConvergenceError(RuntimeError):
    """An iterative numerical procedure hit its iteration cap."""


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    family: str
    params: tuple[float, ...]

    @property
    def size(self) -> int:
        return len(self.nodes)

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    rule_size_used: int


# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def gamma_function(z: float) -> float:
    """Gamma function for real ``z > 0``."""
    if not z > 0:
        raise DomainError(f"gamma_function requires z > 0, got z={z}")
    if z < 0.5:
        return gamma_function(z + 1.0) / z
    z -= 1.0
    series = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        series += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    # split the power so large z does not overflow before the exponential
    half = t ** ((z + 0.5) / 2.0)
    return _SQRT_2PI * half * math.exp(-t) * half * series


def jacobi_recurrence_coefficients(k: int, p: float, q: float) -> tuple[float, float]:
    """Recurrence coefficients of the monic orthogonal polynomials for ``(1-t)**p (1+t)**q``.

    Returns ``(diag_k, offdiag_sq_k)``.  For ``k = 0`` the second entry is the
    total mass ``2**(p+q+1) B(p+1, q+1)``.
    """
    if k < 0:
        raise DomainError("k must be nonnegative")
    s = p + q
    if k == 0:
        diag = (q - p) / (s + 2.0)
        mass = 2.0 ** (s + 1.0) * gamma_function(p + 1.0) * gamma_function(q + 1.0) / gamma_function(s + 2.0)
        return diag, mass
    r = 2.0 * k + s
    diag = (q * q - p * p) / (r * (r + 2.0)) if q != p else 0.0
    if k == 1:
        # removable 0/0 when p + q = -1
        offdiag_sq = 4.0 * (1.0 + p) * (1.0 + q) / ((2.0 + s) ** 2 * (3.0 + s))
    else:
        offdiag_sq = 4.0 * k * (k + p) * (k + q) * (k + s) / (r * r * (r + 1.0) * (r - 1.0))
    return diag, offdiag_sq


def laguerre_recurrence_coefficients(k: int, p: float) -> tuple[float, float]:
    """Same convention as :func:`jacobi_recurrence_coefficients`, for ``t**p exp(-t)`` on ``(0, inf)``."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    if k == 0:
        return p + 1.0, gamma_function(p + 1.0)
    return 2.0 * k + p + 1.0, k * (k + p)


def tridiagonal_eigen(diag: Sequence[float], offdiag: Sequence[float]) -> tuple[list[float], list[float]]:
    """Eigenvalues and first eigenvector components of a symmetric tridiagonal matrix.

    ``offdiag[i]`` couples rows ``i`` and ``i + 1``.  Results are sorted by
    eigenvalue.  Raises :class:`ConvergenceError` if an eigenvalue needs more
    than ``MAX_QL_ITERATIONS`` sweeps.
    """
    n = len(diag)
    d = [float(v) for v in diag]
    e = [float(v) for v in offdiag] + [0.0]
    z = [0.0] * n
    if n == 0:
        return d, z
    z[0] = 1.0
    eps = np.finfo(float).eps
    for l in range(n):
        iterations = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= eps * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            iterations += 1
            if iterations > MAX_QL_ITERATIONS:
                raise ConvergenceError(f"QL iteration did not converge for eigenvalue {l} of {n}")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            shift = 0.0
            deflated = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= shift
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - shift
                r = (d[i] - g) * s + 2.0 * c * b
                shift = s * r
                d[i + 1] = g + shift
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            if deflated:
                continue
            d[l] -= shift
            e[l] = g
            e[m] = 0.0
    order = sorted(range(n), key=d.__getitem__)
    return [d[i] for i in order], [z[i] for i in order]


@lru_cache(maxsize=512)
def _cached_rule(m: int, family: str, params: tuple[float, ...]) -> QuadratureRule:
    if family == "jacobi":
        p, q = params
        coeffs = [jacobi_recurrence_coefficients(k, p, q) for k in range(m)]
    elif family == "laguerre":
        (p,) = params
        coeffs = [laguerre_recurrence_coefficients(k, p) for k in range(m)]
    else:
        raise DomainError(f"unknown rule family {family!r}")
    diag = [c[0] for c in coeffs]
    mass = coeffs[0][1]
    offdiag = [math.sqrt(c[1]) for c in coeffs[1:]]
    try:
        nodes, first = tridiagonal_eigen(diag, offdiag)
    except ConvergenceError as exc:
        raise ConvergenceError(f"{exc} (m={m}, {family}{params})") from None
    nodes_arr = np.array(nodes)
    weights_arr = mass * np.square(first)
    nodes_arr.flags.writeable = False
    weights_arr.flags.writeable = False
    return QuadratureRule(nodes_arr, weights_arr, family, params)


def gauss_rule(m: int, family: str, *params: float) -> QuadratureRule:
    """``m``-point Gauss rule for ``jacobi`` ``(1-t)**p (1+t)**q`` on (-1, 1) or ``laguerre`` ``t**p exp(-t)``."""
    if m < 1:
        raise DomainError(f"rule size must be positive, got m={m}")
    if any(not v > -1 for v in params):
        raise DomainError(f"{family} exponents must exceed -1, got {params}")
    expected = {"jacobi": 2, "laguerre": 1}.get(family)
    if expected is None:
        raise DomainError(f"unknown rule family {family!r}")
    if len(params) != expected:
        raise DomainError(f"{family} rule takes {expected} exponent(s), got {len(params)}")
    return _cached_rule(m, family, tuple(float(v) for v in params))


@lru_cache(maxsize=1024)
def interval_rule(p: AngelescoParams, side: str, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes in x and weights that integrate ``g(x) * weight(x)`` over one interval.

    Both endpoint singularities are absorbed by a Jacobi rule; the remaining
    smooth factor of the weight is folded into the returned weights.
    """
    if side == "left":
        # x = a(1 - t)/2: (x - a) = |a|(1 + t)/2, |x| = |a|(1 - t)/2
        rule = gauss_rule(m, "jacobi", p.beta, p.alpha)
        half = -p.a / 2.0
        x = p.a * (1.0 - rule.nodes) / 2.0
        w = rule.weights * half ** (p.alpha + p.beta + 1.0) * (1.0 - x) ** p.gamma
    elif side == "right":
        # x = (1 + t)/2: x = (1 + t)/2, (1 - x) = (1 - t)/2
        rule = gauss_rule(m, "jacobi", p.gamma, p.beta)
        x = (1.0 + rule.nodes) / 2.0
        w = rule.weights * 0.5 ** (p.beta + p.gamma + 1.0) * (x - p.a) ** p.alpha
    else:
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def integrate_against_weight(
    func: Callable[[np.ndarray], np.ndarray],
    p: AngelescoParams,
    side: str,
    tol: float = 1e-13,
    start: int = 8,
) -> IntegralResult:
    """Adaptive weighted integral of a vectorized ``func`` over ``[a, 0]`` or ``[0, 1]``.

    The rule size doubles from ``start`` until two successive values agree to
    ``tol * max(1, |value|)``.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    m = max(1, start)
    x, w = interval_rule(p, side, m)
    previous = float(np.dot(w, func(x)))
    for _ in range(MAX_DOUBLINGS):
        m *= 2
        if m > MAX_RULE_SIZE:
            break
        x, w = interval_rule(p, side, m)
        value = float(np.dot(w, func(x)))
        diff = abs(value - previous)
        if diff <= tol * max(1.0, abs(value)):
            return IntegralResult(value, diff, m)
        previous = value
    raise ConvergenceError(f"integral over {side} interval did not converge for {p} (last size {m})")


def _as_callable(poly) -> tuple[Callable[[np.ndarray], np.ndarray], int]:
    if hasattr(poly, "degree") and callable(poly):
        degree = poly.degree() if callable(poly.degree) else poly.degree
        return poly, int(degree)
    coeffs = np.asarray(poly, dtype=float)
    return (lambda x: np.polynomial.polynomial.polyval(x, coeffs)), max(len(coeffs) - 1, 0)


def integrate_poly_against_weight(poly, p: AngelescoParams, interval: str, tol: float = 1e-13) -> IntegralResult:
    """Integral of a polynomial times the weight over the ``left`` or ``right`` interval.

    ``poly`` is an ascending coefficient sequence or any callable polynomial
    object with a ``degree``.
    """
    func, degree = _as_callable(poly)
    return integrate_against_weight(func, p, interval, tol, start=degree // 2 + 8)
