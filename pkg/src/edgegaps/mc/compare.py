"""Confront Monte Carlo gap probabilities with the asymptotic expansions."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..asymptotics import Expansion, evaluate
from ..errors import DomainError
from .runner import MCReport


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares line ``y = slope * basis(t) + intercept``."""

    basis: str
    slope: float
    stderr: float
    intercept: float
    points: int


@dataclass(frozen=True)
class ComparisonRow:
    t: float
    n: int
    p_hat: float
    log_p: float
    log_p_stderr: float
    predicted: float
    difference: float
    excluded: str  # empty when used; otherwise the reason


@dataclass(frozen=True)
class Comparison:
    rows: list
    raw_fit: SlopeFit | None
    corrected_fit: SlopeFit | None
    fit_n: int

    def to_dict(self) -> dict:
        conv = lambda f: None if f is None else f.__dict__.copy()
        return {"rows": [r.__dict__.copy() for r in self.rows], "fit_n": self.fit_n,
                "raw_fit": conv(self.raw_fit), "corrected_fit": conv(self.corrected_fit)}


def expansion_variable(edge: str, t: float) -> float:
    """Positive variable the expansions use: ``t`` at the hard edge, ``|t|`` for a soft gap ``(t, inf)``, ``t < 0``."""
    if edge == "hard":
        return t
    return -t


def least_squares_slope(x, y) -> tuple[float, float, float]:
    """Slope, its standard error and the intercept of an ordinary least-squares line."""
    x, y = np.asarray(x, float), np.asarray(y, float)
    if x.size < 2:
        raise DomainError("a slope fit needs at least two points")
    (slope, intercept), res, *_ = np.linalg.lstsq(np.column_stack([x, np.ones_like(x)]), y, rcond=None)
    sxx = float(np.sum((x - x.mean()) ** 2))
    if x.size > 2:
        rss = float(np.sum((y - slope * x - intercept) ** 2))
        se = math.sqrt(rss / (x.size - 2) / sxx)
    else:
        se = math.nan
    return float(slope), se, float(intercept)


def compare_mc_asym(report: MCReport, expansions: dict[int, Expansion], fit_n: int = 0) -> Comparison:
    """Tabulate ``log P(n)`` against the expansions and fit the ``n = fit_n`` column.

    The raw fit regresses ``log P`` on the leading basis function. The corrected
    fit first subtracts the subleading terms of the expansion, so an exact
    match recovers the leading coefficient exactly. Cells with ``P = 0`` or an
    expansion variable outside ``t > 0`` are kept in the table but flagged.
    """
    if not report.complete:
        raise DomainError("comparison needs a complete report")
    p, se = report.p_hat, report.stderr
    rows = []
    for k, t in enumerate(report.plan.t_grid):
        s = expansion_variable(report.edge, t)
        for n, e in sorted(expansions.items()):
            if n > report.plan.n_max:
                raise DomainError(f"n={n} exceeds the report's n_max={report.plan.n_max}")
            ph = float(p[k, n])
            reason = ""
            if ph == 0.0:
                reason = "p_hat = 0"
            elif not s > 0:
                reason = "expansion variable not positive"
            lp = math.log(ph) if ph > 0 else -math.inf
            lse = float(se[k, n]) / ph if ph > 0 else math.inf
            pred = evaluate(e, s) if s > 0 else math.nan
            rows.append(ComparisonRow(t, n, ph, lp, lse, pred, lp - pred if not reason else math.nan, reason))

    raw = corrected = None
    if fit_n in expansions:
        e = expansions[fit_n]
        lead, coef = e.sorted_terms()[0]
        used = [r for r in rows if r.n == fit_n and not r.excluded]
        if len(used) >= 2:
            s = np.array([expansion_variable(report.edge, r.t) for r in used])
            x = lead(s)
            y = np.array([r.log_p for r in used])
            raw = SlopeFit(lead.label(), *least_squares_slope(x, y), len(used))
            sub = np.array([evaluate(e, v) for v in s]) - coef * x
            corrected = SlopeFit(lead.label(), *least_squares_slope(x, y - sub), len(used))
    return Comparison(rows, raw, corrected, fit_n)

