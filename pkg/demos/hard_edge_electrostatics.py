"""
Conditioning the hard edge
==========================

Force ``n`` eigenvalues into the interval ``(0, t)`` at the hard edge and let
the remaining charge rearrange. The conditioned charge collapses into a blob
``(0, b)``; this script follows ``b``, the potential drop and ``log E`` as
``t`` grows, and sets them next to the large-``t`` expansion.
"""

import math

import numpy as np

from edgegaps import asymptotics as asy
from edgegaps import electrostatics as es

# An empty gap is elementary: log E = -beta t / 8, independent of the entropy term.
for beta in (1.0, 2.0, 4.0):
    s = es.hard_solve(es.HardEdgeProblem(t=40.0, n=0, beta=beta))
    print(f"beta={beta:g}  n=0  logE={s.logE:+.6f}  -beta t/8={-beta * 40 / 8:+.6f}")

# With n > 0 the blob endpoint b follows 4 sqrt(t) n - 2 n^2 once t >> n^2.
n = 2.0
print("\n       t           b     4 sqrt(t) n - 2n^2    rel err")
for t in np.geomspace(1e2, 1e8, 7):
    b = es.hard_solve(es.HardEdgeProblem(t, n)).b
    law = 4 * math.sqrt(t) * n - 2 * n * n
    print(f"{t:8.0e}  {b:12.6g}  {law:18.6g}  {abs(b / law - 1):9.2e}")

# The blob holds exactly n units of charge: integrating the density recovers it.
t = 100.0
b = es.solve_blob_endpoint(n, t)
print(f"\ncount(b) = {es.hard_count(b, t):.12f}   quadrature = {es.hard_count_quadrature(b, t):.12f}")

# Outside the blob the field is purely imaginary (the blob and the region x > t are conductors).
xs = np.r_[np.linspace(0.05, 0.95, 4) * b, t * np.array([1.5, 10, 1e3])]
print("max |Re E| on the conductors:", max(abs(es.hard_field_boundary(float(x), b, t).real) for x in xs))

# log E minus the bare expansion settles to a constant; the expansion captures every growing term.
beta, a = 1.0, 1.0
e = asy.hard_expansion(beta, n, a, uniform=False)
print("\n       t      logE - expansion")
for t in np.geomspace(1e3, 1e9, 7):
    s = es.hard_solve(es.HardEdgeProblem(t, n, a, beta))
    print(f"{t:8.0e}  {s.logE - asy.evaluate(e, t):+.6f}")

# The rejected entropy term is half the corrected one; check its defining integral by quadrature.
c = es.hard_legacy_entropy(b=4.0, t=100.0, beta=1.0)
print(f"\nlegacy entropy: quadrature {c.quadrature:.10f}, closed form {c.closed_form:.10f}")
