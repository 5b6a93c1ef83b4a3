"""Acceptance criteria, one test each, with a one-line pass/fail summary per criterion.

Run directly (``python tests/test_acceptance.py``) or under pytest; the
summary lines are printed in both cases.
"""

from __future__ import annotations

import math
import sys
import time

import numpy as np
import pytest

from angelesco.cascade import diagonal_zeros
from angelesco.core import AngelescoParams
from angelesco.gram_oracle import oracle_zeros
from angelesco.limits import LaguerreHermiteParams, corollary_checks, lh_build
from angelesco.quadrature import gauss_rule
from angelesco.verification import run_suite

EXPONENTS = (-0.5, 0.0, 0.5, 2.0)


def _beta_moments(p, q, count):
    """Moments of (1-t)^p (1+t)^q by the Beta integral and integration by parts (q >= p, reflected otherwise)."""
    flip = q < p
    if flip:
        p, q = q, p
    m = [2.0 ** (p + q + 1) * math.gamma(p + 1) * math.gamma(q + 1) / math.gamma(p + q + 2)]
    m.append((q - p) * m[0] / (p + q + 2))
    for j in range(1, count - 1):
        m.append((j * m[j - 1] + (q - p) * m[j]) / (j + p + q + 2))
    return [(-v if flip and j % 2 else v) for j, v in enumerate(m[:count])]


def closed_forms():
    worst = 0.0
    cases = [
        (AngelescoParams(-1.0, 0.0, 0.0, 0.0), (-1 / math.sqrt(3), 1 / math.sqrt(3))),
        (AngelescoParams(-0.5, 0.0, 0.0, 0.0), ((1 - math.sqrt(7)) / 6, (1 + math.sqrt(7)) / 6)),
    ]
    for beta in (0.0, 0.5, 1.0, 2.0):
        for lam in (0.0, 1.0):
            r = math.sqrt((beta + 1) / (beta + 2 * lam + 3))
            cases.append((AngelescoParams(-1.0, lam, beta, lam), (-r, r)))
    for p, expected in cases:
        for zs in (diagonal_zeros(p, 1), oracle_zeros(p, 1, 1)):
            worst = max(worst, max(abs(z - e) for z, e in zip(zs.all, expected)))
    return worst <= 1e-12, f"max error {worst:.2e} over {len(cases)} parameter sets, both methods"


def oracle_equivalence():
    r = run_suite("oracle-equivalence", n_max=6)
    return r.passed, f"{len(r.cases)} cases, max |cascade - gram| {r.notes['max_deviation']:.2e}"


def interlacing():
    r = run_suite("interlacing", n_max=6)
    return r.passed, f"{len(r.cases)} ladders, smallest gap {r.worst_margin:.3e}"


def monotone_alpha_gamma():
    ra = run_suite("monotone-alpha", n_max=4)
    rg = run_suite("monotone-gamma", n_max=4)
    return ra.passed and rg.passed, f"alpha: {len(ra.cases)} sweeps, min step {ra.worst_margin:.2e}; gamma: {len(rg.cases)} sweeps, min step {rg.worst_margin:.2e}"


def symmetric_beta():
    r = run_suite("monotone-beta-symmetric", n_max=4)
    return r.passed, f"{len(r.cases)} sweeps, min step {r.worst_margin:.2e}, symmetry checked at every grid point"


def laguerre_hermite():
    worst = 0.0
    for beta in (0.0, 0.5, 1.0, 3.0):
        r = math.sqrt((beta + 1) / 2)
        zs = lh_build(LaguerreHermiteParams(beta), 1, 1)[1]
        worst = max(worst, abs(zs.negative[0] + r), abs(zs.positive[0] - r))
    report = corollary_checks(3)
    return worst <= 1e-10 and report.passed, f"closed-form error {worst:.2e}; corollaries {len(report.cases)} columns, min step {report.worst_margin:.2e}"


def limit_relations():
    r = run_suite("limits", n_max=2)
    return r.passed, "; ".join(f"{c.inputs['family']} n={c.inputs['n']}: {'ok' if c.verdict else 'FAIL'}" for c in r.cases)


def quadrature_exactness():
    worst = 0.0
    for m in range(1, 13):
        for p in EXPONENTS:
            for q in EXPONENTS:
                rule = gauss_rule(m, "jacobi", p, q)
                moments = _beta_moments(p, q, 2 * m)
                for j, exact in enumerate(moments):
                    got = float(np.dot(rule.weights, rule.nodes**j))
                    # odd moments of a symmetric weight vanish: compare against the mass instead
                    scale = abs(exact) if abs(exact) > 1e-14 * moments[0] else moments[0]
                    worst = max(worst, abs(got - exact) / scale)
            rule = gauss_rule(m, "laguerre", p)
            for j in range(2 * m):
                exact = math.gamma(j + p + 1)
                worst = max(worst, abs(float(np.dot(rule.weights, rule.nodes**j)) - exact) / exact)
    return worst <= 1e-12, f"max relative moment error {worst:.2e}"


def expansion_diagnostic():
    r = run_suite("expansion-diagnostic", n_max=4)
    first = r.cases[0].detail if r.cases else "no cases"
    return r.passed and len(r.cases) == 24, f"{len(r.cases)} reports, odd residual zero in all; n=1 lambda=0.5 beta=0: {first}"


CRITERIA = [
    (1, "closed-form n=1 zeros", closed_forms, 1.0),
    (2, "oracle equivalence", oracle_equivalence, 120.0),
    (3, "interlacing", interlacing, None),
    (4, "monotonicity in alpha and gamma", monotone_alpha_gamma, 120.0),
    (5, "symmetric beta case", symmetric_beta, None),
    (6, "Laguerre-Hermite closed forms and corollaries", laguerre_hermite, None),
    (7, "limit relations", limit_relations, 60.0),
    (8, "quadrature exactness", quadrature_exactness, None),
    (9, "expansion diagnostic", expansion_diagnostic, None),
]


def evaluate(check, limit):
    start = time.perf_counter()
    ok, detail = check()
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        ok = False
        detail += f"; runtime limit {limit:g}s exceeded"
    return ok, detail, elapsed


def summary_line(number, name, ok, detail, elapsed):
    return f"criterion {number} [{name}]: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {detail}"


@pytest.mark.parametrize("number, name, check, limit", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, name, check, limit, capsys):
    if number == 1:
        # warm-up so the runtime limit measures the solve, not first-call setup
        diagonal_zeros(AngelescoParams(-1.0, 0.0, 0.0, 0.0), 1)
    ok, detail, elapsed = evaluate(check, limit)
    with capsys.disabled():
        print("\n" + summary_line(number, name, ok, detail, elapsed))
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for number, name, check, limit in CRITERIA:
        ok, detail, elapsed = evaluate(check, limit)
        failures += not ok
        print(summary_line(number, name, ok, detail, elapsed), flush=True)
    sys.exit(1 if failures else 0)
