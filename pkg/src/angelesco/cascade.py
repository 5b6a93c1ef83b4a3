"""Zeros of diagonal Jacobi-Angelesco polynomials by the Rodrigues ladder.

Peeling one derivative off the Rodrigues formula shows that the zeros of
``P_{k+1,k+1}`` with exponents ``(alpha, beta, gamma)`` are the roots of

    f(x) = sum_j 1/(x - z_j) + (alpha+1)/(x-a) + (beta+1)/x - (gamma+1)/(1-x),

where ``z_j`` are the zeros of ``P_{k,k}`` with every exponent raised by one.
Between consecutive poles ``f`` falls strictly from +inf to -inf, so each
such interval holds exactly one root.  Starting from ``P_{0,0} = 1`` and
exponent shift ``n - 1`` the ladder climbs to ``P_{n,n}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import AngelescoParams, DomainError, PoleError, validate_params
from .gram_oracle import ZeroSet

__all__ = [
    "CascadeError",
    "CascadeLevel",
    "Bracket",
    "f_eval",
    "f_derivative",
    "solve_in_bracket",
    "brackets_for",
    "cascade_ladder",
    "diagonal_zeros",
]

DEFAULT_TOL = 1e-13
MAX_ITERATIONS = 200
POLE_GUARD = 1e-300
# brackets are shrunk by this fraction of their width before the first evaluation
SHRINK = 2.0**-40


class CascadeError(RuntimeError):
    """A bracket solve failed; carries the ladder level when raised from the ladder."""


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"bracket needs lo < hi, got ({self.lo}, {self.hi})")

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class CascadeLevel:
    k: int
    shifted_params: AngelescoParams
    zeros: ZeroSet


def _poles(prev_zeros, p: AngelescoParams) -> list[float]:
    return sorted([p.a, *_zeros_tuple(prev_zeros), 0.0, 1.0])


def _check_distance(x: float, prev: Sequence[float], p: AngelescoParams) -> None:
    for pole in (p.a, 0.0, 1.0, *prev):
        if abs(x - pole) < POLE_GUARD:
            raise PoleError(f"x={x!r} is within {POLE_GUARD} of the pole {pole!r}")


def _zeros_tuple(prev_zeros) -> tuple[float, ...]:
    return prev_zeros.all if isinstance(prev_zeros, ZeroSet) else tuple(prev_zeros)


def f_eval(x: float, prev_zeros, pole_params: AngelescoParams) -> float:
    """The rational function whose roots are the next-level zeros.

    ``pole_params`` holds the exponents before the ``+1`` shift; it is added here.
    """
    prev = _zeros_tuple(prev_zeros)
    _check_distance(x, prev, pole_params)
    p = pole_params
    total = sum(1.0 / (x - z) for z in prev)
    return total + (p.alpha + 1.0) / (x - p.a) + (p.beta + 1.0) / x - (p.gamma + 1.0) / (1.0 - x)


def f_derivative(x: float, prev_zeros, pole_params: AngelescoParams) -> float:
    prev = _zeros_tuple(prev_zeros)
    _check_distance(x, prev, pole_params)
    p = pole_params
    total = sum(1.0 / (x - z) ** 2 for z in prev)
    return -(total + (p.alpha + 1.0) / (x - p.a) ** 2 + (p.beta + 1.0) / x**2 + (p.gamma + 1.0) / (1.0 - x) ** 2)


def _f_and_derivative(x: float, prev: tuple[float, ...], p: AngelescoParams) -> tuple[float, float]:
    value = 0.0
    slope = 0.0
    for z in prev:
        r = 1.0 / (x - z)
        value += r
        slope += r * r
    ra = 1.0 / (x - p.a)
    r0 = 1.0 / x
    r1 = 1.0 / (1.0 - x)
    value += (p.alpha + 1.0) * ra + (p.beta + 1.0) * r0 - (p.gamma + 1.0) * r1
    slope += (p.alpha + 1.0) * ra * ra + (p.beta + 1.0) * r0 * r0 + (p.gamma + 1.0) * r1 * r1
    return value, -slope


def solve_in_bracket(b: Bracket, prev_zeros, pole_params: AngelescoParams, tol: float = DEFAULT_TOL) -> float:
    """Unique root of :func:`f_eval` between two consecutive poles.

    Newton steps from the midpoint, replaced by bisection whenever the step
    leaves the current sign bracket.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    prev = _zeros_tuple(prev_zeros)
    p = pole_params
    lo = b.lo + SHRINK * b.width
    hi = b.hi - SHRINK * b.width
    x = 0.5 * (lo + hi)
    for _ in range(MAX_ITERATIONS):
        _check_distance(x, prev, p)
        value, slope = _f_and_derivative(x, prev, p)
        if value == 0.0:
            return x
        # f decreases: positive values lie left of the root
        if value > 0.0:
            lo = x
        else:
            hi = x
        step = value / slope
        candidate = x - step
        if not lo < candidate < hi:
            candidate = 0.5 * (lo + hi)
            step = x - candidate
        x = candidate
        if abs(step) <= tol or hi - lo <= tol:
            return x
    raise CascadeError(f"no convergence after {MAX_ITERATIONS} iterations in bracket ({b.lo}, {b.hi}) for {p}")


def brackets_for(prev_zeros, p: AngelescoParams) -> list[Bracket]:
    poles = _poles(prev_zeros, p)
    return [Bracket(lo, hi) for lo, hi in zip(poles[:-1], poles[1:])]


def cascade_ladder(p: AngelescoParams, n: int, tol: float = DEFAULT_TOL) -> list[CascadeLevel]:
    """Every level of the ladder for ``P_{n,n}``; level ``k`` holds the zeros of ``P_{k+1,k+1}`` at shift ``n-1-k``."""
    validate_params(p)
    if n < 1:
        raise DomainError(f"n must be at least 1, got n={n}")
    levels: list[CascadeLevel] = []
    prev = ZeroSet((), ())
    for k in range(n):
        shifted = p.shifted(n - 1 - k)
        roots = []
        for b in brackets_for(prev, shifted):
            try:
                roots.append(solve_in_bracket(b, prev, shifted, tol))
            except (CascadeError, PoleError) as exc:
                raise CascadeError(f"level {k} of {n}: {exc}") from exc
        # the brackets straddling 0 are ordered, so the first k+1 roots are negative
        prev = ZeroSet(tuple(roots[: k + 1]), tuple(roots[k + 1 :]))
        levels.append(CascadeLevel(k, shifted, prev))
    return levels


def diagonal_zeros(p: AngelescoParams, n: int, tol: float = DEFAULT_TOL) -> ZeroSet:
    """The ``n`` negative and ``n`` positive zeros of ``P_{n,n}``."""
    return cascade_ladder(p, n, tol)[-1].zeros
