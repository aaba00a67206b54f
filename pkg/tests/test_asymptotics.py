import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgegaps import asymptotics as asy
from edgegaps import electrostatics as es
from edgegaps.errors import DomainError, InfeasibleCountError


def test_soft_beta2_known_coefficients():
    e = asy.soft_expansion(2, 0)
    assert e.coefficient(3) == -1 / 12
    assert e.coefficient(Fraction(3, 2)) == 0.0
    assert e.coefficient(0, True) == -1 / 8
    assert len(e.terms) == 3


def test_bulk_beta2_log_coefficient():
    for rho in (0.3, 1.0, 2.5):
        assert asy.bulk_expansion(2, 0, rho).coefficient(0, True) == -1 / 4


def test_hard_beta2_with_exponent():
    # -t/4 + a sqrt t - (a^2/4) log t
    a = 1.5
    e = asy.hard_expansion(2, 0, a)
    assert e.coefficient(1) == -0.25
    assert e.coefficient("1/2") == pytest.approx(a)
    assert e.coefficient(0, True) == pytest.approx(-a * a / 4)


@pytest.mark.parametrize("n, a", [(0, 0), (1, 0), (2, 1), (3, 2.5)])
def test_hard_beta2_log_coefficient(n, a):
    # -(n^2 + n a + a^2/2) per log t^{1/2}, i.e. half that per log t
    assert asy.hard_expansion(2, n, a).coefficient(0, True) == pytest.approx(-(n * n + n * a + a * a / 2) / 2)


def test_hard_n0_a0_is_single_term():
    e = asy.hard_expansion(1.0, 0)
    assert list(e.terms) == [asy.BasisTerm(1)]


def test_uniform_flag_only_moves_log():
    u, b = asy.hard_expansion(1.0, 2, 1.0), asy.hard_expansion(1.0, 2, 1.0, uniform=False)
    assert u.coefficient(1) == b.coefficient(1) and u.coefficient("1/2") == b.coefficient("1/2")
    # a(a-1)/4 + a/(2 beta) = 1/2, times -beta/2
    assert u.coefficient(0, True) - b.coefficient(0, True) == pytest.approx(-0.25)


def test_bulk_n_positive_constant():
    beta, n, rho = 1.0, 2, 0.5
    e = asy.bulk_expansion(beta, n, rho)
    c = n / 2 * (1 - beta / 2 - beta * n / 2)
    assert e.coefficient(0, True) == pytest.approx(c)
    assert e.coefficient(0) == pytest.approx(c * (math.log(4 * math.pi * rho / n) + 1))
    assert e.coefficient(1) == pytest.approx((beta * n + beta / 2 - 1) * math.pi * rho / 2)


def test_bulk_n0_rescaling_of_density():
    # the rho t dependence: f(rho, t) = f(1, rho t)
    e1, e2 = asy.bulk_expansion(4, 0, 1.0), asy.bulk_expansion(4, 0, 2.0)
    np.testing.assert_allclose(asy.evaluate(e2, 3.0), asy.evaluate(e1, 6.0), rtol=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 8), st.integers(0, 5), st.floats(0, 3), st.floats(0.01, 100), st.floats(0.5, 1e4))
def test_rescaled_matches_substitution(beta, n, a, c, t):
    e = asy.hard_expansion(beta, n, a)
    np.testing.assert_allclose(asy.evaluate(e.rescaled(c), t), asy.evaluate(e, c * t), rtol=1e-10, atol=1e-10)


def test_rescale_domain():
    with pytest.raises(DomainError):
        asy.soft_expansion(2, 0).rescaled(0.0)


def test_evaluate_vectorized_and_domain():
    e = asy.soft_expansion(2, 1)
    t = np.array([1.0, 2.0, 5.0])
    np.testing.assert_allclose(asy.evaluate(e, t), [asy.evaluate(e, x) for x in t])
    with pytest.raises(DomainError):
        asy.evaluate(e, 0.0)
    with pytest.raises(DomainError):
        asy.evaluate(e, np.array([1.0, -2.0]))


def test_sorted_terms_leading_first():
    labels = [t.label() for t, _ in asy.hard_expansion(1.0, 1, 1.0).sorted_terms()]
    assert labels == ["t", "t^1/2", "log t"]


def test_add_requires_same_edge():
    with pytest.raises(DomainError):
        asy.hard_expansion(1, 0) + asy.soft_expansion(1, 0)


def test_invalid_parameters():
    with pytest.raises(DomainError):
        asy.hard_expansion(0, 1)
    with pytest.raises(DomainError):
        asy.soft_expansion(1, -1)
    with pytest.raises(DomainError):
        asy.bulk_expansion(1, 0, 0.0)
    with pytest.raises(DomainError):
        asy.Expansion("edge", {})


@pytest.mark.parametrize("n", range(7))
def test_factorization(n):
    assert asy.factorization_residual("soft", n).ok()
    for a in (0, 0.5, 1, 2):
        r = asy.factorization_residual("hard", n, a)
        assert r.ok(), r.to_dict()


def test_factorization_detects_wrong_pairing():
    # pairing n with n-1 instead of n+1 must leave a visible residual
    lhs = asy.soft_expansion(2.0, 2)
    rhs = asy.soft_expansion(1.0, 2) + asy.soft_expansion(1.0, 1)
    assert asy.compare("factorization", lhs, rhs, {}).max_relative > 0.1


@pytest.mark.parametrize("beta", [0.5, 1, 2, 3, 4, 8])
@pytest.mark.parametrize("n", range(7))
def test_soft_duality(beta, n):
    if asy.soft_dual_parameters(beta, n)[1] < 0:
        with pytest.raises(InfeasibleCountError):
            asy.soft_duality_residual(beta, n)
        return
    assert asy.soft_duality_residual(beta, n).ok()


@pytest.mark.parametrize("beta", [0.5, 1, 2, 3, 4, 8])
@pytest.mark.parametrize("n", range(7))
@pytest.mark.parametrize("a", [0, 0.5, 1, 2])
def test_hard_duality(beta, n, a):
    if asy.hard_dual_parameters(beta, n, a)[1] < 0:
        with pytest.raises(InfeasibleCountError):
            asy.hard_duality_residual(beta, n, a)
        return
    r = asy.hard_duality_residual(beta, n, a)
    assert r.ok(), r.to_dict()
    assert all(row.term.is_constant for row in r.excluded)


def test_duality_is_an_involution():
    beta, n, a = 1.0, 3, 0.5
    bd, nd, ad = asy.hard_dual_parameters(beta, n, a)
    assert asy.hard_dual_parameters(bd, nd, ad) == pytest.approx((beta, n, a))
    assert asy.soft_dual_parameters(*asy.soft_dual_parameters(4.0, 2)) == pytest.approx((4.0, 2))


def test_duality_scale_invariance():
    # a common length scale only adds constants, which are excluded
    assert asy.hard_duality_residual(1.0, 3, 1.0, s_beta=7.3).ok()
    assert asy.soft_duality_residual(4.0, 2, s_beta=0.2).ok()


def test_duality_wrong_scale_fails():
    lhs = asy.soft_expansion(1.0, 3)
    rhs = asy.soft_expansion(*asy.soft_dual_parameters(1.0, 3))
    assert asy.compare("duality", lhs, rhs, {}).max_relative > 0.1


def test_residual_table_serializes():
    d = asy.hard_duality_residual(1.0, 2, 0).to_dict()
    assert d["kind"] == "duality" and d["edge"] == "hard"
    assert {"term", "lhs", "rhs", "residual", "relative"} <= set(d["rows"][0])


@pytest.mark.parametrize("beta, n, a", [(2, 2, 0), (1, 2, 1), (4, 3, 0)])
def test_hard_electrostatics_approach_expansion(beta, n, a):
    # log E from the solver minus the bare expansion settles to a constant
    e = asy.hard_expansion(beta, n, a, uniform=False)
    diff = [es.hard_solve(es.HardEdgeProblem(t, n, a, beta)).logE - asy.evaluate(e, t) for t in (1e4, 1e6, 1e8)]
    steps = np.abs(np.diff(diff))
    assert steps[1] < steps[0] / 5


@pytest.mark.parametrize("beta, n", [(2, 2), (1, 2), (4, 3)])
def test_soft_electrostatics_approach_expansion(beta, n):
    e = asy.soft_expansion(beta, n, uniform=False)
    diff = [es.soft_solve(es.SoftEdgeProblem(t, n, beta)).logE - asy.evaluate(e, t) for t in (1e2, 1e3, 1e4)]
    steps = np.abs(np.diff(diff))
    assert steps[1] < steps[0] / 5
