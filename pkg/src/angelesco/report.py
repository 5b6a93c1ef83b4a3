"""Verification reports and monotonicity verdicts shared by the limit checks and the CLI."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

MONOTONE_MARGIN = 1e-10

INCREASING = "strictly-increasing"
DECREASING = "strictly-decreasing"
NON_MONOTONE = "non-monotone"
INDISTINGUISHABLE = "indistinguishable"


@dataclass
class CaseResult:
    inputs: dict[str, Any]
    verdict: bool
    margin: float
    detail: str = ""

    def as_dict(self) -> dict[str, Any]:
        return {"inputs": self.inputs, "verdict": "pass" if self.verdict else "fail", "margin": self.margin, "detail": self.detail}


@dataclass
class VerificationReport:
    suite: str
    grid: dict[str, Any]
    cases: list[CaseResult] = field(default_factory=list)
    elapsed_seconds: float = 0.0
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(case.verdict for case in self.cases)

    def add(self, inputs: dict[str, Any], verdict: bool, margin: float, detail: str = "") -> CaseResult:
        case = CaseResult(inputs, bool(verdict), float(margin), detail)
        self.cases.append(case)
        return case

    @property
    def worst_margin(self) -> float:
        return min((c.margin for c in self.cases), default=math.inf)

    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.verdict]

    def as_dict(self) -> dict[str, Any]:
        out = {
            "suite": self.suite,
            "grid": self.grid,
            "cases": [c.as_dict() for c in self.cases],
            "pass": self.passed,
            "elapsed_seconds": self.elapsed_seconds,
        }
        if self.notes:
            out["notes"] = self.notes
        return out


@dataclass(frozen=True)
class ColumnTrend:
    verdict: str
    min_step: float
    max_step: float
    first_violation: int | None

    def margin_for(self, direction: str) -> float:
        """Smallest per-step move in ``direction`` (negative when some step goes the wrong way)."""
        return self.min_step if direction == INCREASING else -self.max_step


def column_trend(values: Sequence[float], margin: float = MONOTONE_MARGIN) -> ColumnTrend:
    """Classify a trajectory by its per-step differences.

    Steps with ``|diff| < margin`` are noise; a column made only of such steps
    is ``indistinguishable``.  ``first_violation`` is the index of the first
    step that breaks the direction set by the first clear step.
    """
    diffs = np.diff(np.asarray(values, dtype=float))
    if len(diffs) == 0:
        return ColumnTrend(INDISTINGUISHABLE, 0.0, 0.0, None)
    lo, hi = float(diffs.min()), float(diffs.max())
    if lo > margin:
        return ColumnTrend(INCREASING, lo, hi, None)
    if hi < -margin:
        return ColumnTrend(DECREASING, lo, hi, None)
    clear = np.nonzero(np.abs(diffs) >= margin)[0]
    if len(clear) == 0:
        return ColumnTrend(INDISTINGUISHABLE, lo, hi, None)
    sign = np.sign(diffs[clear[0]])
    bad = np.nonzero(sign * diffs < margin)[0]
    return ColumnTrend(NON_MONOTONE, lo, hi, int(bad[0]) if len(bad) else None)


def grid(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic grid, computed by index to avoid accumulated drift."""
    count = int(round((stop - start) / step))
    return [round(start + i * step, 12) for i in range(count + 1)]
