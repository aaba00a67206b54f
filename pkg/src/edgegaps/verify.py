"""Invariant suites behind the ``verify`` command.

Each group returns :class:`CheckResult` rows holding the measured error and the
tolerance it was held to. The Monte Carlo group only runs with ``full=True``.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np
from scipy import integrate, special

from . import asymptotics as asy
from . import electrostatics as es
from .mc import EdgeWindow, EnsembleSpec, MCPlan, TridiagonalMatrix, count_in_window, run_mc, sturm_count_below
from .numerics import QuadratureSpec, elliptic_quartet, find_root, quad_singular

RATIOS = (0.01, 0.2, 0.5, 0.8, 0.99)
T_GRID = (1.0, 10.0, 100.0, 1e4, 1e6)


class CheckResult(NamedTuple):
    group: str
    name: str
    error: float
    tol: float
    passed: bool


def _check(group, name, error, tol) -> CheckResult:
    return CheckResult(group, name, float(error), tol, bool(error < tol))


def _rel(x, y) -> float:
    return abs(x - y) / max(abs(y), 1e-300)


def numerics_group(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in rng.uniform(0.0, 1.0, 100):
        q = elliptic_quartet(float(k))
        worst = max(worst, _rel(q.E * q.Kc + q.Ec * q.K - q.K * q.Kc, math.pi / 2))
    out = [_check("numerics", "Legendre relation, 100 moduli", worst, 1e-12)]

    worst = 0.0
    for k in np.arange(1, 10) / 10:
        q = elliptic_quartet(float(k))
        Kq = integrate.quad(lambda th: (1 - (k * math.sin(th)) ** 2) ** -0.5, 0, math.pi / 2, epsabs=0, epsrel=1e-13)[0]
        Eq = integrate.quad(lambda th: (1 - (k * math.sin(th)) ** 2) ** 0.5, 0, math.pi / 2, epsabs=0, epsrel=1e-13)[0]
        worst = max(worst, _rel(q.K, Kq), _rel(q.E, Eq))
    out.append(_check("numerics", "K, E against their defining integrals", worst, 1e-10))

    worst = 0.0
    for p, q in rng.uniform(-0.5, 2.0, (20, 2)):
        spec = QuadratureSpec(0.0, 1.0, min(p, 0.0), min(q, 0.0), 1e-11)
        val = quad_singular(lambda x: x**p * (1 - x) ** q, spec)
        worst = max(worst, _rel(val, special.beta(p + 1, q + 1)))
    out.append(_check("numerics", "Euler beta integrals, 20 random exponents", worst, 1e-10))

    root = find_root(lambda b: es.hard_count(b, 100.0) - 3.0, 0.0, 100.0 * (1 - 1e-12))
    out.append(_check("numerics", "find_root residual on hard_count - 3", abs(es.hard_count(root, 100.0) - 3.0) / 3.0, 1e-10))
    return out


def _grid_worst(closed: Callable, quad: Callable, half: bool) -> float:
    worst = 0.0
    for t in T_GRID:
        for r in RATIOS:
            p = r * (t / 2 if half else t)
            worst = max(worst, _rel(quad(p, t), closed(p, t)))
    return worst


def hard_group() -> list[CheckResult]:
    out = [
        _check("hard", "count closed form vs density integral, 5x5",
               _grid_worst(es.hard_count, es.hard_count_quadrature, False), 1e-8),
        _check("hard", "drop closed form vs gap integral, 5x5",
               _grid_worst(es.hard_drop, es.hard_drop_quadrature, False), 1e-8),
    ]
    worst = 0.0
    for t in (1e2, 1e4, 1e6):
        for n in (0, 0.5, 1, 2, 5):
            if n >= es.max_hard_count(t):
                continue  # infeasible: the blob cannot hold n
            s = es.hard_solve(es.HardEdgeProblem(t, n))
            worst = max(worst, abs(es.hard_count(s.b, t) - n))
    out.append(_check("hard", "solver roundtrip |count(b) - n|", worst, 1e-9))
    worst = 0.0
    for beta in (0.5, 1, 2, 4):
        for t in (1.0, 10.0, 100.0):
            worst = max(worst, _rel(es.hard_solve(es.HardEdgeProblem(t, 0, 0, beta)).logE, -beta * t / 8))
    out.append(_check("hard", "logE = -beta t/8 at n = a = 0", worst, 4e-16))
    worst = 0.0
    for b, t, beta in ((1, 100, 1), (0, 100, 4), (10, 50, 1), (0.5, 4, 0.5), (80, 100, 4)):
        c = es.hard_legacy_entropy(b, t, beta)
        worst = max(worst, _rel(c.quadrature, c.closed_form))
    out.append(_check("hard", "entropy integral vs (1/beta - 1/2) v/2", worst, 1e-6))
    worst = 0.0
    for b, t in ((1, 100), (30, 40)):
        for x in np.concatenate([np.linspace(0, b, 27)[1:-1], t * np.geomspace(1.001, 1e3, 25)]):
            worst = max(worst, abs(es.hard_field_boundary(float(x), b, t).real))
    out.append(_check("hard", "conductor condition |Re E| on blob and outer region", worst, 1e-8))
    return out


def soft_group() -> list[CheckResult]:
    out = [
        _check("soft", "count closed form vs density integral, 5x5",
               _grid_worst(es.soft_count, es.soft_count_quadrature, True), 1e-8),
        _check("soft", "drop closed form vs gap integral, 5x5",
               _grid_worst(es.soft_drop, es.soft_drop_quadrature, True), 1e-8),
    ]
    worst = 0.0
    for t in (1e2, 1e4, 1e6):
        for n in (0, 0.5, 1, 2, 5):
            s = es.soft_solve(es.SoftEdgeProblem(t, n))
            worst = max(worst, abs(es.soft_count(s.d, t) - n))
    out.append(_check("soft", "solver roundtrip |count(d) - n|", worst, 1e-9))
    c = es.soft_legacy_entropy(0.0, 4.0, 1.0)
    out.append(_check("soft", "empty-gap entropy closed form vs quadrature", _rel(c.quadrature, c.closed_form), 1e-6))
    worst = 0.0
    for d, t in ((1, 10), (20, 50)):
        b1, b2 = t / 2 - d, t / 2 + d
        for x in np.concatenate([np.linspace(b1, b2, 27)[1:-1], t * np.geomspace(1.001, 1e3, 25)]):
            worst = max(worst, abs(es.soft_field_boundary(float(x), d, t).real))
    out.append(_check("soft", "conductor condition |Re E| on blob and outer region", worst, 1e-8))
    return out


def general_group() -> list[CheckResult]:
    worst = 0.0
    for k in (0, 1, 2):
        for c, t in ((1.0, 1.0), (es.HARD_EDGE_C, 7.0), (es.SOFT_EDGE_C, 3.0)):
            p = es.GeneralAlphaProblem(k, c, t)
            worst = max(worst, _rel(es.general_V1_quadrature(p), es.general_V1(p)))
    out = [_check("general", "V1 closed form vs field quadrature, k = 0, 1, 2", worst, 1e-8)]
    worst = 0.0
    for beta in (1, 2, 4):
        for t in (1.0, 10.0):
            worst = max(worst,
                        _rel(es.general_logE0(es.GeneralAlphaProblem.hard(t, beta)), -beta * t / 8),
                        _rel(es.general_logE0(es.GeneralAlphaProblem.soft(t, beta)), -beta * t**3 / 24))
    out.append(_check("general", "edge constants give -beta t/8 and -beta t^3/24", worst, 1e-14))
    return out


def lemma2_group() -> list[CheckResult]:
    worst = max(abs(es.lemma2_H(u) - es.lemma2_H_quadrature(u)) for u in np.linspace(0, 1, 11))
    return [_check("lemma2", "max |closed form - quadrature| on u = 0, 0.1, ..., 1", worst, 1e-10)]


def asymptotics_group() -> list[CheckResult]:
    worst_f = 0.0
    for n in range(7):
        worst_f = max(worst_f, asy.factorization_residual("soft", n).max_relative)
        for a in (0, 0.5, 1, 2):
            worst_f = max(worst_f, asy.factorization_residual("hard", n, a).max_relative)
    worst_d = 0.0
    for beta in (0.5, 1, 2, 3, 4, 8):
        for n in range(7):
            if asy.soft_dual_parameters(beta, n)[1] >= 0:
                worst_d = max(worst_d, asy.soft_duality_residual(beta, n).max_relative)
            if asy.hard_dual_parameters(beta, n, 0)[1] >= 0:
                for a in (0, 0.5, 1, 2):
                    worst_d = max(worst_d, asy.hard_duality_residual(beta, n, a).max_relative)
    s = asy.soft_expansion(2, 0)
    known = (s.coefficient(3) == -1 / 12 and s.coefficient("3/2") == 0.0 and s.coefficient(0, True) == -1 / 8
             and asy.bulk_expansion(2, 0, 1.0).coefficient(0, True) == -1 / 4)
    return [
        _check("asymptotics", "factorization residuals, hard and soft", worst_f, 1e-13),
        _check("asymptotics", "duality residuals, beta in {1/2, 1, 2, 3, 4, 8}", worst_d, 1e-13),
        _check("asymptotics", "beta = 2, n = 0 coefficients exact", 0.0 if known else 1.0, 0.5),
    ]


def sturm_group(seed: int = 0, trials: int = 1000) -> list[CheckResult]:
    """Sturm counts below 20 shifts, and soft-window counts, against ``eigvalsh`` on random N=12 matrices."""
    rng = np.random.default_rng(seed)
    spec = EnsembleSpec("gaussian", 12)
    mismatches = 0
    for _ in range(trials):
        T = TridiagonalMatrix(rng.standard_normal(12), rng.standard_normal(11))
        ev = np.linalg.eigvalsh(T.dense())
        xs = np.linspace(ev[0] - 1, ev[-1] + 1, 20)
        mismatches += int(np.sum(sturm_count_below(T, xs) != (ev[None, :] < xs[:, None]).sum(axis=1)))
        w = EdgeWindow("soft", float(rng.uniform(-40, 5)))
        mismatches += int(count_in_window(T, w, spec) != np.sum(ev > w.raw_interval(spec)[0]))
    return [_check("sturm", f"Sturm and window counts vs dense eigensolver, {trials} N=12 matrices", mismatches, 0.5)]


def mc_group(seed: int = 7, samples: int = 100_000, workers: int = 1) -> list[CheckResult]:
    spec = EnsembleSpec("laguerre", 100, 2.0, 0.0)
    rep = run_mc(spec, "hard", MCPlan(samples, seed, (1.0, 2.0, 4.0)), workers=workers)
    worst = 0.0
    for k, t in enumerate(rep.plan.t_grid):
        p, se = rep.p_hat[k, 0], rep.stderr[k, 0]
        worst = max(worst, abs(-math.log(p) - t / 4) / (se / p))
    return [_check("mc", f"hard edge -log P(0) vs t/4 in standard errors, {samples} samples", worst, 3.0)]


GROUPS: dict[str, Callable[..., list[CheckResult]]] = {
    "numerics": numerics_group,
    "hard": hard_group,
    "soft": soft_group,
    "general": general_group,
    "lemma2": lemma2_group,
    "asymptotics": asymptotics_group,
    "sturm": sturm_group,
}


def run_verify(groups=None, full: bool = False, seed: int = 7, samples: int = 100_000) -> list[CheckResult]:
    names = list(groups) if groups else list(GROUPS) + (["mc"] if full else [])
    out = []
    for name in names:
        if name == "mc":
            out += mc_group(seed, samples)
        elif name in GROUPS:
            out += GROUPS[name]()
        else:
            raise KeyError(name)
    return out
