"""
Soft edge expansions and the beta <-> 4/beta duality
====================================================

The soft-edge gap ``(t, inf)`` with ``t -> -inf`` has an expansion in powers of
``|t|`` whose coefficients are polynomials in ``beta`` and ``n``. Here the
electrostatic solution is compared with it, and the coefficient identities
linking ``beta`` to ``4/beta`` and ``beta = 2`` to ``beta = 1`` are checked.
"""

import math

import numpy as np

from edgegaps import asymptotics as asy
from edgegaps import electrostatics as es

# At beta = 2 and n = 0 the expansion reduces to the known -|t|^3/12 - (1/8) log|t|.
for term, coef in asy.soft_expansion(2, 0).sorted_terms():
    print(f"{term.label():>10}  {coef:+.12f}")

# The conditioned blob sits symmetrically about t/2, with half-width d ~ (2t)^{1/4} sqrt(n).
n = 3.0
print("\n       t          d    d^2 / (sqrt(2t) n)")
for t in np.geomspace(10, 1e6, 6):
    d = es.soft_solve(es.SoftEdgeProblem(t, n)).d
    print(f"{t:8.0e}  {d:9.5f}  {d * d / (math.sqrt(2 * t) * n):12.8f}")

# Electrostatic log E against the expansion at beta = 1.
e = asy.soft_expansion(1.0, n, uniform=False)
print("\n   |t|       logE      expansion    difference")
for t in (10.0, 30.0, 100.0, 300.0, 1000.0):
    s = es.soft_solve(es.SoftEdgeProblem(t, n, beta=1.0))
    v = asy.evaluate(e, t)
    print(f"{t:6.0f}  {s.logE:12.4f}  {v:12.4f}  {s.logE - v:+10.6f}")

# Duality: the expansion at (beta, n) equals the one at (4/beta, beta n/2 + beta/2 - 1)
# after rescaling |t|; every non-constant coefficient must agree.
print("\nsoft duality, max relative residual")
for beta in (0.5, 1.0, 4.0, 8.0):
    for n in (1, 2, 4):
        if asy.soft_dual_parameters(beta, n)[1] >= 0:
            r = asy.soft_duality_residual(beta, n)
            print(f"  beta={beta:<4g} n={n}  dual={tuple(round(x, 6) for x in asy.soft_dual_parameters(beta, n))}"
                  f"  {r.max_relative:.1e}")

# Factorization: the beta = 2 expansion is the sum of beta = 1 expansions at n and n + 1.
table = asy.factorization_residual("soft", 2)
for row in table.rows:
    print(f"{row.term.label():>10}  lhs {row.lhs:+.10f}  rhs {row.rhs:+.10f}")
