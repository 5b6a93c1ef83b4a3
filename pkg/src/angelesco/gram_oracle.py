"""Type II Jacobi-Angelesco polynomials built directly from their orthogonality conditions.

This path never touches the Rodrigues recursion, so it serves as the
reference against which :mod:`angelesco.cascade` is checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.polynomial import Chebyshev, Polynomial
from numpy.polynomial import polynomial as P

from .core import AngelescoParams, DomainError, validate_params
from .quadrature import MAX_DOUBLINGS, MAX_RULE_SIZE, ConvergenceError, interval_rule

__all__ = [
    "SingularSystemError",
    "LocalizationError",
    "MonicPolynomial",
    "ZeroSet",
    "build_type2_polynomial",
    "localize_roots",
    "oracle_zeros",
    "bisect_brackets",
    "SplitPolynomial",
    "build_split_polynomial",
    "find_sign_changes",
    "orthogonality_residual",
    "solve_orthogonality_system",
]

CONDITION_LIMIT = 1e14
BISECTION_TOL = 1e-13
INITIAL_CELLS = 64
MAX_REFINEMENTS = 14


class SingularSystemError(ArithmeticError):
    """The orthogonality system is numerically singular."""


class LocalizationError(RuntimeError):
    """Fewer sign changes than the guaranteed zero count were found."""


@dataclass(frozen=True)
class MonicPolynomial:
    """Monic polynomial, coefficients in ascending degree.

    ``evaluator`` optionally holds a better-conditioned representation of the
    same polynomial (e.g. a Chebyshev series) used for evaluation.
    """

    coeffs: tuple[float, ...]
    evaluator: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] != 1.0:
            raise DomainError("a monic polynomial needs leading coefficient exactly 1")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        if self.evaluator is not None:
            return self.evaluator(x)
        return np.polynomial.polynomial.polyval(x, self.coeffs)


@dataclass(frozen=True)
class ZeroSet:
    negative: tuple[float, ...]
    positive: tuple[float, ...]

    @property
    def counts(self) -> tuple[int, int]:
        return len(self.negative), len(self.positive)

    @property
    def all(self) -> tuple[float, ...]:
        return self.negative + self.positive

    def __len__(self) -> int:
        return len(self.negative) + len(self.positive)


def solve_orthogonality_system(
    basis: Sequence[Callable[[np.ndarray], np.ndarray]],
    leading: Callable[[np.ndarray], np.ndarray],
    conditions: Sequence[tuple[Callable[[np.ndarray], np.ndarray], Callable[[int], tuple[np.ndarray, np.ndarray]]]],
    start: int,
    context: str,
    tol: float = 1e-13,
) -> np.ndarray:
    """Coefficients ``c`` with ``leading + sum c_j basis_j`` orthogonal to every condition.

    Each condition is ``(test_function, rule)`` where ``rule(m)`` returns
    weighted nodes of size ``m``.  Rule sizes double from ``start`` until the
    system matrix stops changing.
    """
    size = len(basis)
    if len(conditions) != size:
        raise DomainError("number of conditions must match the number of unknowns")

    functions = list(basis) + [leading]

    def assemble(m: int) -> tuple[np.ndarray, np.ndarray]:
        rows = np.empty((size, size + 1))
        magnitude = np.empty((size, size + 1))
        for i, (test, rule) in enumerate(conditions):
            x, w = rule(m)
            tw = w * test(x)
            values = np.array([b(x) for b in functions])
            rows[i] = values @ tw
            magnitude[i] = np.abs(values) @ np.abs(tw)
        return rows, magnitude

    m = start
    matrix, _ = assemble(m)
    for _ in range(MAX_DOUBLINGS):
        m *= 2
        if m > MAX_RULE_SIZE:
            break
        refined, magnitude = assemble(m)
        # compare against the integral of |integrand|: the roundoff floor
        converged = np.all(np.abs(refined - matrix) <= tol * magnitude)
        matrix = refined
        if converged:
            break
    else:
        converged = False
    if not converged:
        raise ConvergenceError(f"orthogonality integrals did not converge for {context}")

    # equilibrate rows; the conditions are only defined up to scale
    scale = np.abs(matrix[:, :size]).max(axis=1, keepdims=True)
    if np.any(scale == 0):
        raise SingularSystemError(f"zero row in orthogonality system for {context}")
    matrix = matrix / scale
    a, rhs = matrix[:, :size], -matrix[:, size]
    cond = np.linalg.cond(a, 1)
    if not cond <= CONDITION_LIMIT:
        raise SingularSystemError(f"orthogonality system condition {cond:.3e} exceeds {CONDITION_LIMIT:.0e} for {context}")
    return np.linalg.solve(a, rhs)


def _monomial(series) -> np.ndarray:
    return series.convert(kind=Polynomial, domain=[-1, 1], window=[-1, 1]).coef


class SplitPolynomial:
    """``A(x) V(x) + U(x) B(x)`` for fixed ``U`` (degree n, zeros on the left interval) and ``V`` (degree m, right).

    Every polynomial of degree ``n + m`` has a unique representation with
    ``deg A <= n`` and ``deg B < m``, because ``U`` and ``V`` share no
    zeros.  Each term keeps its scale on the interval its zeros belong to, so
    values stay relatively accurate on both intervals even when the
    polynomial is tiny on one of them.
    """

    def __init__(self, left, right, u, v):
        self.left = left
        self.right = right
        self.u = u
        self.v = v

    def __call__(self, x):
        return self.left(x) * self.v(x) + self.u(x) * self.right(x)

    def to_monomial(self) -> np.ndarray:
        return P.polyadd(P.polymul(_monomial(self.left), _monomial(self.v)), P.polymul(_monomial(self.u), _monomial(self.right)))


def build_split_polynomial(
    n: int,
    m: int,
    left_basis: Callable[[int], object],
    right_basis: Callable[[int], object],
    left_rule: Callable[[int], tuple[np.ndarray, np.ndarray]],
    right_rule: Callable[[int], tuple[np.ndarray, np.ndarray]],
    context: str,
) -> MonicPolynomial:
    """Monic type II polynomial for a pair of measures given by their quadrature rules.

    ``left_basis(k)`` / ``right_basis(k)`` return degree-``k`` numpy series
    adapted to each interval; they serve both as test functions for the
    orthogonality conditions and as building blocks of the representation.
    """
    total = n + m
    if total == 0:
        return MonicPolynomial((1.0,))
    u = left_basis(n)
    v = right_basis(m)
    basis = [lambda x, t=left_basis(i): t(x) * v(x) for i in range(n)]
    basis += [lambda x, t=right_basis(k): u(x) * t(x) for k in range(m)]
    # only u * v reaches degree n + m
    lead = _monomial(u)[-1] * _monomial(v)[-1]

    def leading(x):
        return u(x) * v(x) / lead

    conditions = [(left_basis(k), left_rule) for k in range(n)]
    conditions += [(right_basis(k), right_rule) for k in range(m)]
    c = solve_orthogonality_system(basis, leading, conditions, total + 8, context)
    split = SplitPolynomial(
        sum((c[i] * left_basis(i) for i in range(n)), u * 0) + u / lead,
        sum((c[n + k] * right_basis(k) for k in range(m)), v * 0),
        u,
        v,
    )
    monomial = split.to_monomial()
    coeffs = tuple(float(x) for x in monomial[:total]) + (1.0,)
    return MonicPolynomial(coeffs, split)


def build_type2_polynomial(p: AngelescoParams, n: int, m: int) -> MonicPolynomial:
    """Monic ``P_{n,m}`` of degree ``n + m`` orthogonal to degree < n on ``[a, 0]`` and < m on ``[0, 1]``."""
    validate_params(p)
    if n < 0 or m < 0:
        raise DomainError("degrees must be nonnegative")
    return build_split_polynomial(
        n,
        m,
        lambda k: Chebyshev.basis(k, domain=[p.a, 0.0]),
        lambda k: Chebyshev.basis(k, domain=[0.0, 1.0]),
        lambda k: interval_rule(p, "left", k),
        lambda k: interval_rule(p, "right", k),
        f"{p}, n={n}, m={m}",
    )


def find_sign_changes(
    func, lo: float, hi: float, count: int, context: str, max_refinements: int = MAX_REFINEMENTS
) -> np.ndarray:
    """``count`` brackets ``[left, right]`` of sign changes of ``func`` on ``(lo, hi)``.

    Uses a uniform grid of 64 cells, doubled until enough sign changes appear.
    """
    if count == 0:
        return np.empty((0, 2))
    cells = INITIAL_CELLS
    for _ in range(max_refinements + 1):
        x = np.linspace(lo, hi, cells + 1)
        # open interval: nudge the endpoints inward by a negligible amount
        x[0] = lo + (hi - lo) * 1e-15
        x[-1] = hi - (hi - lo) * 1e-15
        y = np.sign(func(x))
        # exact zeros on grid points count as their own bracket
        idx = np.nonzero(y[:-1] * y[1:] < 0)[0]
        exact = np.nonzero(y == 0)[0]
        if len(exact):
            brackets = [(x[i], x[i + 1]) for i in idx] + [(x[i], x[i]) for i in exact]
            brackets.sort()
        else:
            brackets = [(x[i], x[i + 1]) for i in idx]
        if len(brackets) == count:
            return np.array(brackets)
        if len(brackets) > count:
            raise LocalizationError(f"found {len(brackets)} sign changes, expected {count} on ({lo}, {hi}) for {context}")
        cells *= 2
    raise LocalizationError(
        f"found {len(brackets)} of {count} sign changes on ({lo}, {hi}) after {max_refinements} refinements for {context}"
    )


def bisect_brackets(func, brackets: np.ndarray, tol: float = BISECTION_TOL) -> np.ndarray:
    """Vectorized bisection of every sign-change bracket to width ``tol``."""
    if len(brackets) == 0:
        return np.empty(0)
    lo = brackets[:, 0].copy()
    hi = brackets[:, 1].copy()
    f_lo = np.sign(func(lo))
    for _ in range(200):
        if np.all(hi - lo <= tol):
            break
        mid = 0.5 * (lo + hi)
        f_mid = np.sign(func(mid))
        same = f_mid == f_lo
        zero = f_mid == 0
        lo = np.where(same & ~zero, mid, lo)
        hi = np.where(~same & ~zero, mid, hi)
        lo = np.where(zero, mid, lo)
        hi = np.where(zero, mid, hi)
    return 0.5 * (lo + hi)


def localize_roots(poly: MonicPolynomial, p: AngelescoParams, n: int, m: int) -> ZeroSet:
    """The ``n`` zeros in ``(a, 0)`` and ``m`` zeros in ``(0, 1)`` of ``poly``."""
    if poly.degree != n + m:
        raise DomainError(f"polynomial degree {poly.degree} does not match n + m = {n + m}")
    context = f"{p}, n={n}, m={m}"
    negative = bisect_brackets(poly, find_sign_changes(poly, p.a, 0.0, n, context))
    positive = bisect_brackets(poly, find_sign_changes(poly, 0.0, 1.0, m, context))
    return ZeroSet(tuple(float(v) for v in negative), tuple(float(v) for v in positive))


def oracle_zeros(p: AngelescoParams, n: int, m: int) -> ZeroSet:
    return localize_roots(build_type2_polynomial(p, n, m), p, n, m)


def orthogonality_residual(poly: MonicPolynomial, p: AngelescoParams, n: int, m: int) -> float:
    """Largest ``|int x**k P w|`` over the conditions, each scaled by ``int |P| w`` on its interval."""
    worst = 0.0
    for side, count in (("left", n), ("right", m)):
        if count == 0:
            continue
        # exact on the polynomial part; the smooth weight factor is long converged at this size
        x, w = interval_rule(p, side, 2 * poly.degree + 64)
        values = poly(x)
        norm = float(np.dot(w, np.abs(values)))
        for k in range(count):
            worst = max(worst, abs(float(np.dot(w, x**k * values))) / norm)
    return worst
