"""Pochhammer symbols, Gegenbauer polynomials and the Gegenbauer expansion of the symmetric case.

The expansion

    P_{n,n}^{(lam-1/2, beta, lam-1/2)}(x) = sum_i C(n,i) (-beta-n)_i kappa_{n-i}(lam) C_{n-i}^{(lam+i)}(x) x^{n-i}

is evaluated term by term exactly as written and only ever compared against
the Gram oracle.  Already at ``n = 1`` its monic form has no real zeros while
the true polynomial has two, so nothing downstream relies on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .core import AngelescoParams, DomainError
from .gram_oracle import build_type2_polynomial, localize_roots

__all__ = [
    "pochhammer",
    "gegenbauer",
    "gegenbauer_coefficients",
    "kappa",
    "SymmetricExpansion",
    "symmetric_expansion",
    "ExpansionReport",
    "expansion_diagnostic",
]


def pochhammer(x: float, k: int) -> float:
    """Rising factorial ``x (x+1) ... (x+k-1)``."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    result = 1.0
    for i in range(k):
        result *= x + i
    return result


def gegenbauer(n: int, lam: float, x: float) -> float:
    if n < 0:
        raise DomainError("n must be nonnegative")
    prev, cur = 1.0, 2.0 * lam * x
    if n == 0:
        return prev
    for k in range(2, n + 1):
        prev, cur = cur, (2.0 * x * (k + lam - 1.0) * cur - (k + 2.0 * lam - 2.0) * prev) / k
    return cur


def gegenbauer_coefficients(n: int, lam: float) -> np.ndarray:
    """Monomial coefficients (ascending) of ``C_n^{(lam)}``, by the same recurrence."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    prev = np.array([1.0])
    if n == 0:
        return prev
    cur = np.array([0.0, 2.0 * lam])
    for k in range(2, n + 1):
        nxt = P.polysub(2.0 * (k + lam - 1.0) * P.polymulx(cur), (k + 2.0 * lam - 2.0) * prev) / k
        prev, cur = cur, nxt
    return cur


def kappa(n: int, lam: float) -> float:
    return (-1.0) ** n * pochhammer(2.0 * lam, n) / (2.0**n * pochhammer(lam + 0.5, n) * math.factorial(n))


@dataclass(frozen=True)
class SymmetricExpansion:
    n: int
    lam: float
    beta: float
    coeffs: tuple[float, ...]

    @property
    def monic(self) -> tuple[float, ...]:
        lead = self.coeffs[-1]
        return tuple(c / lead for c in self.coeffs)

    @property
    def odd_residual(self) -> float:
        return max((abs(c) for c in self.coeffs[1::2]), default=0.0)


def _check_expansion_args(n: int, lam: float, beta: float) -> None:
    if n < 1:
        raise DomainError("n must be positive")
    if not lam > -0.5 or lam == 0.0:
        raise DomainError(f"lambda must exceed -1/2 and be nonzero, got {lam}")
    if not beta > -1:
        raise DomainError(f"beta must exceed -1, got {beta}")


def symmetric_expansion(n: int, lam: float, beta: float) -> SymmetricExpansion:
    _check_expansion_args(n, lam, beta)
    total = np.zeros(2 * n + 1)
    for i in range(n + 1):
        scale = math.comb(n, i) * pochhammer(-beta - n, i) * kappa(n - i, lam)
        # C_{n-i}^{(lam+i)}(x) x^{n-i}
        term = np.concatenate([np.zeros(n - i), gegenbauer_coefficients(n - i, lam + i)])
        total[: len(term)] += scale * term
    return SymmetricExpansion(n, lam, beta, tuple(float(c) for c in total))


@dataclass(frozen=True)
class ExpansionReport:
    n: int
    lam: float
    beta: float
    coefficient_difference: float
    odd_residual: float
    zero_distance: float
    expansion_monic: tuple[float, ...]
    oracle_monic: tuple[float, ...]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "lambda": self.lam,
            "beta": self.beta,
            "coefficient_difference": self.coefficient_difference,
            "odd_residual": self.odd_residual,
            "zero_distance": self.zero_distance,
            "expansion_monic": list(self.expansion_monic),
            "oracle_monic": list(self.oracle_monic),
        }


def expansion_diagnostic(n: int, lam: float, beta: float) -> ExpansionReport:
    """Compare the expansion with the Gram-oracle polynomial ``P_{n,n}^{(lam-1/2, beta, lam-1/2)}(x; -1)``.

    ``zero_distance`` is the largest distance between the sorted (by real
    part, then imaginary part) roots of the monic expansion and the oracle
    zeros; complex roots are allowed on the expansion side.
    """
    _check_expansion_args(n, lam, beta)
    expansion = symmetric_expansion(n, lam, beta)
    p = AngelescoParams(-1.0, lam - 0.5, beta, lam - 0.5)
    oracle = build_type2_polynomial(p, n, n)
    diff = max(abs(x - y) for x, y in zip(expansion.monic, oracle.coeffs))
    expansion_roots = sorted(np.roots(expansion.monic[::-1]), key=lambda z: (z.real, z.imag))
    oracle_roots = localize_roots(oracle, p, n, n).all
    distance = max(abs(z - r) for z, r in zip(expansion_roots, oracle_roots))
    return ExpansionReport(
        n=n,
        lam=lam,
        beta=beta,
        coefficient_difference=float(diff),
        odd_residual=expansion.odd_residual,
        zero_distance=float(distance),
        expansion_monic=expansion.monic,
        oracle_monic=oracle.coeffs,
    )
