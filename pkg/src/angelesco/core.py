"""Parameters and weight function of the two-interval Jacobi-Angelesco system.

The weight is ``(x - a)**alpha * |x|**beta * (1 - x)**gamma`` on ``[a, 1]``,
with the Angelesco pair of intervals ``[a, 0]`` and ``[0, 1]``.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass


class DomainError(ValueError):
    """Raised for parameters or evaluation points outside the admissible domain."""


class PoleError(DomainError):
    """Raised when a rational function is evaluated at one of its poles."""


@dataclass(frozen=True)
class AngelescoParams:
    a: float
    alpha: float
    beta: float
    gamma: float

    def shifted(self, k: float) -> "AngelescoParams":
        """Same endpoint, every exponent increased by ``k``."""
        return AngelescoParams(self.a, self.alpha + k, self.beta + k, self.gamma + k)

    def replace(self, **changes: float) -> "AngelescoParams":
        return dataclasses.replace(self, **changes)

    @property
    def is_symmetric(self) -> bool:
        return self.a == -1.0 and self.alpha == self.gamma


class WeightValue(float):
    """Float returned by :func:`eval_weight`; ``singular`` flags the +inf convention at a pole."""

    singular: bool

    def __new__(cls, value: float, singular: bool = False):
        obj = super().__new__(cls, value)
        obj.singular = singular
        return obj


def validate_params(p: AngelescoParams) -> AngelescoParams:
    if not all(math.isfinite(v) for v in (p.a, p.alpha, p.beta, p.gamma)):
        raise DomainError(f"parameters must be finite, got {p}")
    if not p.a < 0:
        raise DomainError(f"a must be negative, got a={p.a}")
    for name in ("alpha", "beta", "gamma"):
        value = getattr(p, name)
        if not value > -1:
            raise DomainError(f"{name} must exceed -1, got {name}={value}")
    return p


def _power(base: float, exponent: float) -> tuple[float, bool]:
    # 0**negative is an integrable singularity: +inf, flagged.
    if base == 0.0:
        if exponent < 0:
            return math.inf, True
        return (1.0 if exponent == 0 else 0.0), False
    return base**exponent, False


def eval_weight(x: float, p: AngelescoParams) -> WeightValue:
    """Weight value at ``x`` in ``[a, 1]``; ``|x|**beta`` is used on both sides."""
    if not p.a <= x <= 1.0:
        raise DomainError(f"x={x} outside [{p.a}, 1]")
    value = 1.0
    singular = False
    for base, exponent in ((x - p.a, p.alpha), (abs(x), p.beta), (1.0 - x, p.gamma)):
        factor, flag = _power(base, exponent)
        singular = singular or flag
        value *= factor
    if singular:
        value = math.inf
    return WeightValue(value, singular)


def weight_log_derivative(x: float, p: AngelescoParams) -> float:
    """``alpha/(x - a) + beta/x - gamma/(1 - x)``, the logarithmic derivative of the weight."""
    if x == p.a or x == 0.0 or x == 1.0:
        raise PoleError(f"logarithmic derivative has a pole at x={x}")
    return p.alpha / (x - p.a) + p.beta / x - p.gamma / (1.0 - x)
