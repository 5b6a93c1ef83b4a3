"""Exact rational reference computations, independent of the package numerics."""

from __future__ import annotations

import math
from fractions import Fraction


def poly_mul(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def poly_pow(p: list[Fraction], k: int) -> list[Fraction]:
    out = [Fraction(1)]
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def legendre_type_moments(p: int, q: int, count: int) -> list[Fraction]:
    """``int_{-1}^{1} t**j (1-t)**p (1+t)**q dt`` for ``j < count``, integer exponents."""
    w = poly_mul(poly_pow([Fraction(1), Fraction(-1)], p), poly_pow([Fraction(1), Fraction(1)], q))
    out = []
    for j in range(count):
        total = Fraction(0)
        for i, c in enumerate(w):
            k = i + j
            if k % 2 == 0:
                total += c * Fraction(2, k + 1)
        out.append(total)
    return out


def recurrence_by_gram_schmidt(moments: list[Fraction], k_max: int) -> list[tuple[Fraction, Fraction]]:
    """Monic recurrence ``(diag_k, offdiag_sq_k)`` for ``k <= k_max`` from exact moments."""

    def inner(f, g):
        prod = poly_mul(f, g)
        return sum(c * moments[i] for i, c in enumerate(prod))

    polys = [[Fraction(1)]]
    for k in range(1, k_max + 2):
        cand = [Fraction(0)] * k + [Fraction(1)]
        for prev in polys:
            coef = inner(cand, prev) / inner(prev, prev)
            cand = [c - coef * (prev[i] if i < len(prev) else 0) for i, c in enumerate(cand)]
        polys.append(cand)
    out = []
    for k in range(k_max + 1):
        tk = [Fraction(0)] + polys[k]
        diag = inner(tk, polys[k]) / inner(polys[k], polys[k])
        off = inner(polys[k], polys[k]) / inner(polys[k - 1], polys[k - 1]) if k else inner(polys[0], polys[0])
        out.append((diag, off))
    return out


def jacobi_moments(p: float, q: float, count: int) -> list[float]:
    """Moments of ``(1-t)**p (1+t)**q`` from the Beta integral and the
    integration-by-parts recurrence ``(j+p+q+2) m_{j+1} = j m_{j-1} + (q-p) m_j``.

    Evaluated with ``q >= p`` (all terms nonnegative) and reflected otherwise.
    """
    flip = q < p
    if flip:
        p, q = q, p
    m = [2.0 ** (p + q + 1) * math.gamma(p + 1) * math.gamma(q + 1) / math.gamma(p + q + 2)]
    m.append((q - p) * m[0] / (p + q + 2))
    for j in range(1, count - 1):
        m.append((j * m[j - 1] + (q - p) * m[j]) / (j + p + q + 2))
    m = m[:count]
    return [(-v if flip and j % 2 else v) for j, v in enumerate(m)]


def angelesco_moment(j: int, a: Fraction, alpha: int, beta: int, gamma: int, side: str) -> Fraction:
    """``int x**j (x-a)**alpha |x|**beta (1-x)**gamma`` over ``[a,0]`` or ``[0,1]`` exactly."""
    base = poly_mul(poly_pow([-a, Fraction(1)], alpha), poly_pow([Fraction(1), Fraction(-1)], gamma))
    sign = Fraction((-1) ** beta) if side == "left" else Fraction(1)
    total = Fraction(0)
    for i, c in enumerate(base):
        k = i + j + beta
        if side == "left":
            total += c * sign * (-(a ** (k + 1)) / (k + 1))
        else:
            total += c * Fraction(1, k + 1)
    return total


def solve_fraction(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rhs)
    a = [row[:] + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def exact_type2(a: Fraction, alpha: int, beta: int, gamma: int, n: int, m: int) -> list[Fraction]:
    """Monic coefficients (ascending) of the type II polynomial, from exact moments."""
    deg = n + m
    rows, rhs = [], []
    for side, count in (("left", n), ("right", m)):
        mom = [angelesco_moment(j, a, alpha, beta, gamma, side) for j in range(count + deg)]
        for k in range(count):
            rows.append([mom[k + i] for i in range(deg)])
            rhs.append(-mom[k + deg])
    return solve_fraction(rows, rhs) + [Fraction(1)]
