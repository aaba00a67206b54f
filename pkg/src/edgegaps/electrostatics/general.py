"""Background density ``c x^alpha`` on ``(0, inf)`` with an empty gap ``(0, t)``.

Only the half-integer exponents ``alpha = k - 1/2`` admit a purely imaginary
background field at large ``t``; those are the cases treated here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy.special import gamma

from ..errors import DomainError
from ..numerics import QuadratureSpec, p_k_poly, pochhammer, quad_singular

HARD_EDGE_C = 1.0 / (2.0 * math.pi)
SOFT_EDGE_C = 1.0 / math.pi


@dataclass(frozen=True)
class GeneralAlphaProblem:
    """Gap ``(0, t)`` in a background ``c x^(k - 1/2)`` at inverse temperature ``beta``."""

    k: int
    c: float
    t: float
    beta: float = 2.0

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 0:
            raise DomainError(f"k must be a nonnegative integer, got {self.k!r}")
        if self.c <= 0 or self.t <= 0 or self.beta <= 0:
            raise DomainError("c, t and beta must be positive")

    @property
    def alpha(self) -> float:
        return self.k - 0.5

    @classmethod
    def hard(cls, t: float, beta: float = 2.0) -> "GeneralAlphaProblem":
        return cls(0, HARD_EDGE_C, t, beta)

    @classmethod
    def soft(cls, t: float, beta: float = 2.0) -> "GeneralAlphaProblem":
        return cls(1, SOFT_EDGE_C, t, beta)


def background_field_coeff(alpha: float, c: float) -> complex:
    """Coefficient of ``z^alpha`` in the field of the unperturbed background.

    Equals ``c (-pi cot(pi alpha) + i pi)``; the real part is exactly zero at
    half-integer ``alpha``.
    """
    if alpha <= -1:
        raise DomainError(f"background exponent must exceed -1, got {alpha}")
    if alpha >= 0 and float(alpha).is_integer():
        raise DomainError(f"cot(pi alpha) has a pole at alpha={alpha}")
    if (alpha + 0.5).is_integer():
        real = 0.0
    else:
        real = -math.pi * c / math.tan(math.pi * alpha)
    return complex(real, math.pi * c)


def general_field(z: complex, k: int, c: float, t: float) -> complex:
    """Trial field ``pi i c z^a (1 - sqrt(z/(z-t)) p_k(t/z))`` with ``a = k - 1/2``.

    ``sqrt(z/(z-t))`` is taken as ``sqrt(z)/sqrt(z-t)``; pass ``complex(x, 0.0)``
    to obtain the boundary value from the upper half plane.
    """
    z = complex(z)
    if z == 0:
        raise DomainError("field is singular at the origin")
    sz = cmath.sqrt(z)
    za = sz ** (2 * k - 1)
    return math.pi * 1j * c * za * (1.0 - sz / cmath.sqrt(z - t) * p_k_poly(k, t / z))


def general_dphi_dx(x: float, k: int, c: float, t: float) -> float:
    """Potential gradient inside the gap: ``pi c x^k p_k(t/x) / sqrt(t - x)`` for ``0 < x < t``."""
    if not 0 < x < t:
        raise DomainError(f"gradient formula holds on (0, t), got x={x}")
    # x^k p_k(t/x) expanded to stay finite at x -> 0
    poly = sum(pochhammer(-0.5, j) / math.factorial(j) * t**j * x ** (k - j) for j in range(k + 1))
    return math.pi * c * poly / math.sqrt(t - x)


def _v1_sum(k: int) -> float:
    return sum(
        gamma(2 * k - j + 1.5) * gamma(0.5) / gamma(2 * k - j + 2) * pochhammer(-0.5, j) / math.factorial(j)
        for j in range(k + 1)
    )


def general_V1(problem: GeneralAlphaProblem) -> float:
    """Electrostatic energy of the emptied gap in closed form."""
    k, c, t = problem.k, problem.c, problem.t
    return math.pi * c * c / (2 * k + 1) * t ** (2 * k + 1) * _v1_sum(k)


def general_V1_quadrature(problem: GeneralAlphaProblem, rel_tol: float = 1e-10) -> float:
    """Same energy from ``c/(2(alpha+1)) * int_0^t x^(alpha+1) dphi/dx dx``."""
    k, c, t = problem.k, problem.c, problem.t
    a = problem.alpha

    def integrand(x):
        return x ** (a + 1) * general_dphi_dx(x, k, c, t)

    return c / (2 * (a + 1)) * quad_singular(integrand, QuadratureSpec(0.0, t, 0.0, -0.5, rel_tol))


def general_logE0(problem: GeneralAlphaProblem) -> float:
    """Leading log gap probability ``-beta * V1`` for an empty gap."""
    return -problem.beta * general_V1(problem)
