"""Acceptance suite: one test, and one printed PASS/FAIL line, per criterion.

The Monte Carlo criteria run 10^5 samples each and take about half a minute in total.
"""

import json
import math
import time

import numpy as np
import pytest

from edgegaps import asymptotics as asy
from edgegaps import electrostatics as es
from edgegaps.cli import main
from edgegaps.mc import EnsembleSpec, MCPlan, compare_mc_asym, run_mc
from edgegaps.verify import sturm_group

T_GRID = (1.0, 10.0, 100.0, 1e4, 1e6)
RATIOS = (0.01, 0.2, 0.5, 0.8, 0.99)
EPS = np.finfo(float).eps


def _rel(x, y):
    return abs(x - y) / abs(y)


def _grid_worst(closed, oracle, width):
    return max(_rel(oracle(r * width(t), t), closed(r * width(t), t)) for t in T_GRID for r in RATIOS)


# ---------------------------------------------------------------- 1


def test_criterion_01_hard_edge_exact_law(criterion):
    t0 = time.perf_counter()
    worst = 0.0
    for beta in (0.5, 1.0, 2.0, 4.0):
        for t in (1.0, 10.0, 100.0):
            worst = max(worst, _rel(es.hard_solve(es.HardEdgeProblem(t, 0, 0, beta)).logE, -beta * t / 8))
    dt = time.perf_counter() - t0
    ok = criterion(1, worst <= 2 * EPS and dt < 1.0,
                   f"hard-edge logE = -beta t/8: worst rel err {worst:.2e} (<= 2 eps), {dt:.3f} s (< 1 s)")
    assert ok


# ---------------------------------------------------------------- 2


def test_criterion_02_closed_forms_vs_quadrature(criterion):
    t0 = time.perf_counter()
    half = lambda t: t / 2
    full = lambda t: t
    checks = {
        # no truncated tail: 1e-8
        "hard count vs density integral": (_grid_worst(es.hard_count, es.hard_count_quadrature, full), 1e-8),
        "hard drop vs gap integral": (_grid_worst(es.hard_drop, es.hard_drop_quadrature, full), 1e-8),
        "soft count vs density integral": (_grid_worst(es.soft_count, es.soft_count_quadrature, half), 1e-8),
        "soft drop vs gap integral": (_grid_worst(es.soft_drop, es.soft_drop_quadrature, half), 1e-8),
        # H vanishes at u = 0 and is O(1) elsewhere, so absolute error
        "Lemma 2 H(u), 25 points": (
            max(abs(es.lemma2_H(float(u)) - es.lemma2_H_quadrature(float(u))) for u in np.linspace(0, 1, 25)), 1e-8),
        "V1 closed form vs field quadrature, k = 0, 1, 2": (
            max(_rel(es.general_V1_quadrature(p), es.general_V1(p))
                for k in (0, 1, 2) for c in (0.1, 1 / (2 * math.pi), 1 / math.pi, 1.0, 3.0)
                for t in (0.1, 1.0, 3.0, 10.0, 50.0)
                for p in [es.GeneralAlphaProblem(k, c, t)]), 1e-8),
        # semi-infinite outer region: 1e-6
        "soft legacy entropy formula vs quadrature": (
            max(abs(c.difference) / abs(c.closed_form)
                for t in T_GRID for r in RATIOS for c in [es.soft_legacy_entropy(r * t / 2, t, 1.0)]), 1e-6),
        "hard entropy integral vs (1/beta - 1/2) v/2": (
            max(abs(c.difference) / abs(c.closed_form)
                for t in T_GRID for r in RATIOS for c in [es.hard_legacy_entropy(r * t, t, 1.0)]), 1e-6),
    }
    dt = time.perf_counter() - t0
    for name, (err, tol) in checks.items():
        print(f"    {name}: {err:.2e} (tol {tol:.0e})")
    ok = all(err < tol for err, tol in checks.values()) and dt < 30
    worst = max(err / tol for err, tol in checks.values())
    assert criterion(2, ok, f"{len(checks)} oracle pairs on 5x5 grids: worst err/tol {worst:.2e}, {dt:.2f} s (< 30 s)")


# ---------------------------------------------------------------- 3


def test_criterion_03_coefficient_identities(criterion):
    t0 = time.perf_counter()
    worst_f = max([asy.factorization_residual("soft", n).max_relative for n in range(7)]
                  + [asy.factorization_residual("hard", n, a).max_relative for n in range(7) for a in (0, 0.5, 1, 2)])
    worst_d, cases = 0.0, 0
    for beta in (0.5, 1, 2, 3, 4, 8):
        for n in range(7):
            if asy.soft_dual_parameters(beta, n)[1] >= 0:
                worst_d = max(worst_d, asy.soft_duality_residual(beta, n).max_relative)
                cases += 1
            for a in (0, 0.5, 1, 2):
                if asy.hard_dual_parameters(beta, n, a)[1] >= 0:
                    worst_d = max(worst_d, asy.hard_duality_residual(beta, n, a).max_relative)
                    cases += 1
    dt = time.perf_counter() - t0
    ok = worst_f < 1e-13 and worst_d < 1e-13 and dt < 1.0
    assert criterion(3, ok, f"factorization {worst_f:.1e}, duality {worst_d:.1e} over {cases} cases "
                            f"(< 1e-13), {dt:.3f} s (< 1 s)")


# ---------------------------------------------------------------- 4


def test_criterion_04_endpoint_laws(criterion):
    t0 = time.perf_counter()
    n, ts = 2.0, (1e3, 1e4, 1e5, 1e6)
    err_b = [_rel(es.hard_solve(es.HardEdgeProblem(t, n)).b, 4 * math.sqrt(t) * n - 2 * n * n) for t in ts]
    err_d = [_rel(es.soft_solve(es.SoftEdgeProblem(t, n)).d ** 2, math.sqrt(2 * t) * n) for t in ts]
    dt = time.perf_counter() - t0
    dec = lambda e: all(b < a for a, b in zip(e, e[1:]))
    ok = dec(err_b) and dec(err_d) and err_b[-1] < 0.02 and err_d[-1] < 0.02 and dt < 5
    fmt = lambda e: ", ".join(f"{x:.1e}" for x in e)
    assert criterion(4, ok, f"n=2, t=1e3..1e6: hard b err [{fmt(err_b)}], soft d^2 err [{fmt(err_d)}]; "
                            f"decreasing, < 2% at 1e6, {dt:.2f} s (< 5 s)")


# ---------------------------------------------------------------- 5


def test_criterion_05_beta2_coefficients(criterion):
    s = asy.soft_expansion(2, 0)
    soft_ok = (s.coefficient(3) == -1 / 12 and s.coefficient("3/2") == 0.0 and s.coefficient(0, True) == -1 / 8
               and len(s.terms) == 3)
    bulk = [asy.bulk_expansion(2, 0, rho).coefficient(0, True) for rho in (0.5, 1.0, 2.0)]
    ok = soft_ok and all(c == -1 / 4 for c in bulk)
    assert criterion(5, ok, f"soft {{|t|^3: {s.coefficient(3)!r}, |t|^3/2: {s.coefficient('3/2')!r}, "
                            f"log: {s.coefficient(0, True)!r}}}, bulk log {bulk[0]!r} (exact)")


# ---------------------------------------------------------------- 6 and 10


MC_HARD = ["mc", "--ensemble", "laguerre", "--beta", "2", "--a", "0", "--N", "100", "--edge", "hard",
           "--t", "1,2,4", "--samples", "100000", "--seed", "7", "--format", "json"]


@pytest.fixture(scope="module")
def hard_run(tmp_path_factory):
    base = tmp_path_factory.mktemp("mc") / "hard_w1"
    t0 = time.perf_counter()
    code = main(MC_HARD + ["--out", str(base)])
    return code, base, time.perf_counter() - t0


def test_criterion_06_mc_hard_edge(criterion, hard_run):
    code, base, dt = hard_run
    doc = json.loads(base.with_suffix(".json").read_text())
    S = doc["samples_done"]
    parts, ok = [], code == 0 and doc["complete"] and S == 100_000
    for g in doc["grid"]:
        t, p = g["t"], g["p_hat"][0]
        se = math.sqrt(p * (1 - p) / S)
        z = abs(p - math.exp(-t / 4)) / se
        ok &= z <= 3.0
        parts.append(f"t={t:g}: -log P = {-math.log(p):.4f} vs {t / 4:g} ({z:.2f} se)")
        if t == 4.0:
            rel = abs(-math.log(p) - 1.0)
            ok &= rel < 0.05
            parts.append(f"rel err at t=4 {rel:.2%} (< 5%)")
    assert criterion(6, ok, "; ".join(parts) + f"; {dt:.0f} s")


def test_criterion_10_determinism(criterion, hard_run, tmp_path):
    _, base, _ = hard_run
    again = tmp_path / "hard_w1_again"
    para = tmp_path / "hard_w2"
    codes = (main(MC_HARD + ["--out", str(again)]),
             main(MC_HARD + ["--out", str(para), "--workers", "2", "--chunk-size", "3000"]))
    same = all(
        base.with_suffix(ext).read_bytes() == other.with_suffix(ext).read_bytes()
        for other in (again, para) for ext in (".json", ".csv")
    )
    assert criterion(10, codes == (0, 0) and same,
                     "cmd_mc seed 7: JSON and CSV byte-identical across two runs and workers 1 vs 2")


# ---------------------------------------------------------------- 7 and 8


@pytest.fixture(scope="module")
def soft_run():
    spec = EnsembleSpec("gaussian", 200, 2.0)
    plan = MCPlan(100_000, 11, tuple(np.linspace(-3.5, -1.5, 5)), n_max=2)
    t0 = time.perf_counter()
    rep = run_mc(spec, "soft", plan)
    return rep, time.perf_counter() - t0


def test_criterion_07_mc_soft_edge_slope(criterion, soft_run):
    rep, dt = soft_run
    cmp = compare_mc_asym(rep, {0: asy.soft_expansion(2, 0)})
    slope = cmp.raw_fit.slope
    rel = abs(slope / (-1 / 12) - 1)
    ok = rep.complete and cmp.raw_fit.basis == "t^3" and cmp.raw_fit.points == 5 and rel < 0.25
    assert criterion(7, ok, f"slope of log P(0) on |t|^3 = {slope:.5f} +/- {cmp.raw_fit.stderr:.5f} vs -1/12, "
                            f"rel err {rel:.1%} (< 25%); subleading-corrected {cmp.corrected_fit.slope:.5f}; {dt:.0f} s")


def test_criterion_08_mc_conditioned_ratio(criterion, soft_run):
    rep, _ = soft_run
    S = rep.samples_done
    order = np.argsort(np.abs(rep.plan.t_grid))
    p0, p1 = rep.p_hat[order, 0], rep.p_hat[order, 1]
    r = p1 / p0
    # delta method with the multinomial covariance -p0 p1 / S
    var = r * r * ((1 - p1) / (S * p1) + (1 - p0) / (S * p0) + 2 / S)
    sig = np.sqrt(var)
    z = (r[1:] - r[:-1]) / np.sqrt(sig[1:] ** 2 + sig[:-1] ** 2)
    ok = bool(np.all(z > -3.0))
    vals = ", ".join(f"|t|={abs(rep.plan.t_grid[k]):.1f}: {x:.4f}" for k, x in zip(order, r))
    assert criterion(8, ok, f"P(1)/P(0) by |t|: {vals}; min step {z.min():+.1f} sigma (> -3)")


# ---------------------------------------------------------------- 9


def test_criterion_09_sturm_oracle(criterion):
    (row,) = sturm_group(seed=0, trials=1000)
    assert criterion(9, row.error == 0, f"{int(row.error)} mismatches vs eigvalsh on 1000 N=12 matrices "
                                        f"(20 shifts + one soft window each)")
