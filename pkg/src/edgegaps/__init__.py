"""Conditioned gap probabilities at random-matrix hard and soft edges.

Subpackages: :mod:`edgegaps.numerics` (elliptic integrals, quadrature, roots),
:mod:`edgegaps.electrostatics` (the conditioned log-gas), :mod:`edgegaps.asymptotics`
(coefficient tables and identity checks) and :mod:`edgegaps.mc` (tridiagonal
beta-ensemble Monte Carlo).
"""

__version__ = "0.1.0"
