"""Special functions, singular quadrature and bracketed root finding.

Complete elliptic integrals are computed with the arithmetic-geometric mean.
The modulus carries its complement explicitly: in the two-cut problems both
``k`` and ``kc`` approach zero in different regimes, and recovering ``kc`` as
``sqrt(1 - k**2)`` would throw away every significant digit near ``k = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy import integrate, optimize

from .errors import AccuracyError, BracketError, DomainError

DEFAULT_QUAD_RTOL = 1e-10
DEFAULT_ROOT_TOL = 1e-12

# below this complementary modulus K and E use their logarithmic expansions
_LOG_BRANCH_KC = 1e-8


@dataclass(frozen=True)
class EllipticModulus:
    """Modulus ``k`` together with its complement ``kc = sqrt(1 - k^2)``."""

    k: float
    kc: float

    def __post_init__(self):
        if not (0.0 <= self.k <= 1.0) or not (0.0 <= self.kc <= 1.0):
            raise DomainError(f"elliptic modulus outside [0, 1]: k={self.k!r}, kc={self.kc!r}")
        if abs(self.k * self.k + self.kc * self.kc - 1.0) > 1e-12:
            raise DomainError(f"k and kc are not complementary: k={self.k!r}, kc={self.kc!r}")

    @classmethod
    def from_k(cls, k: float) -> "EllipticModulus":
        k = float(k)
        if not 0.0 <= k <= 1.0:
            raise DomainError(f"elliptic modulus outside [0, 1]: {k!r}")
        return cls(k, math.sqrt((1.0 - k) * (1.0 + k)))

    @classmethod
    def from_ratio(cls, num: float, den: float) -> "EllipticModulus":
        """Modulus with ``k^2 = num/den`` and ``kc^2 = (den - num)/den``, both to full precision."""
        if den <= 0 or num < 0 or num > den:
            raise DomainError(f"need 0 <= num <= den, den > 0; got num={num!r}, den={den!r}")
        return cls(math.sqrt(num / den), math.sqrt((den - num) / den))

    @property
    def m(self) -> float:
        return self.k * self.k


class EllipticQuartet(NamedTuple):
    """``K(k), E(k), K(kc), E(kc)``; ``Kc`` and ``Ec`` are the primed integrals."""

    K: float
    E: float
    Kc: float
    Ec: float


def agm_sums(m: EllipticModulus) -> tuple[float, float]:
    """``K(k)`` and the AGM tail ``S = sum_{n>=1} 2^(n-1) c_n^2``.

    With these, ``E = K (1 - k^2/2 - S)``. The ``c_n`` follow the
    cancellation-free recurrence ``c_1 = k^2 / (2(1+kc))``,
    ``c_{n+1} = c_n^2 / (4 a_{n+1})`` so ``S`` keeps full relative accuracy
    even when it is tiny (``k -> 0``). Requires ``kc > 0``.
    """
    k, kc = m.k, m.kc
    if kc == 0.0:
        raise DomainError("AGM sums need kc > 0")
    a, g = 0.5 * (1.0 + kc), math.sqrt(kc)
    c = k * k / (2.0 * (1.0 + kc))
    weight = 1.0
    total = c * c
    # c_{n+1} ~ c_n^2 / 4a: once c < 1e-9 a every later term is below 2^n * 1e-36 (relative)
    while c > 1e-9 * a:
        a, g = 0.5 * (a + g), math.sqrt(a * g)
        c = c * c / (4.0 * a)
        weight *= 2.0
        total += weight * c * c
    return math.pi / (2.0 * a), total


def _complete_KE(k: float, kc: float) -> tuple[float, float]:
    if kc == 0.0:
        return math.inf, 1.0
    if kc < _LOG_BRANCH_KC:
        L = math.log(4.0 / kc)
        q = kc * kc
        return L + 0.25 * q * (L - 1.0), 1.0 + 0.5 * q * (L - 0.5)
    K, S = agm_sums(EllipticModulus(k, kc))
    return K, K * (1.0 - 0.5 * k * k - S)


def complement_difference(m: EllipticModulus) -> float:
    """``E(k) - kc^2 K(k)``, accurate also for small ``k`` where it behaves like ``pi k^2 / 4``."""
    if m.kc == 0.0:
        return 1.0
    if m.kc < _LOG_BRANCH_KC:
        K, E = _complete_KE(m.k, m.kc)
        return E - m.kc * m.kc * K
    K, S = agm_sums(m)
    return K * (0.5 * m.k * m.k - S)


def elliptic_quartet(m: EllipticModulus | float) -> EllipticQuartet:
    """Complete elliptic integrals of the first and second kind at ``k`` and ``kc``.

    A bare float is taken as the modulus ``k``. At ``k = 1`` the value ``K`` is
    ``math.inf`` (and symmetrically ``Kc`` at ``k = 0``).
    """
    if not isinstance(m, EllipticModulus):
        m = EllipticModulus.from_k(m)
    K, E = _complete_KE(m.k, m.kc)
    Kc, Ec = _complete_KE(m.kc, m.k)
    return EllipticQuartet(K, E, Kc, Ec)


def pochhammer(u: float, j: int) -> float:
    """Rising factorial ``(u)_j = u (u+1) ... (u+j-1)``."""
    out = 1.0
    for i in range(j):
        out *= u + i
    return out


def p_k_poly(k: int, x):
    """Degree-``k`` Taylor polynomial of ``sqrt(1 - x)`` about zero.

    Works for real, complex and array ``x``.
    """
    if k < 0:
        raise DomainError(f"p_k needs k >= 0, got {k}")
    term = 1.0 + 0.0 * x
    total = term
    for j in range(k):
        term = term * (j - 0.5) * x / (j + 1)
        total = total + term
    return total


@dataclass(frozen=True)
class QuadratureSpec:
    """Integration range with declared algebraic endpoint behaviour.

    ``left_exponent`` / ``right_exponent`` give the power ``e`` in
    ``f ~ (x - lower)^e`` (resp. ``(upper - x)^e``); zero means regular.
    ``upper`` may be ``math.inf``; the right exponent is then ignored.
    """

    lower: float
    upper: float
    left_exponent: float = 0.0
    right_exponent: float = 0.0
    rel_tol: float = DEFAULT_QUAD_RTOL

    def __post_init__(self):
        if not self.lower < self.upper:
            raise DomainError(f"need lower < upper, got [{self.lower}, {self.upper}]")
        if math.isinf(self.lower):
            raise DomainError("lower limit must be finite")
        for e in (self.left_exponent, self.right_exponent):
            if not -1.0 < e <= 0.0:
                raise DomainError(f"endpoint exponent must lie in (-1, 0], got {e}")
        if self.rel_tol <= 0:
            raise DomainError("rel_tol must be positive")


def _power_map(f, anchor: float, length: float, exponent: float, sign: float, limit: float):
    """Integrand in ``u`` for ``x = anchor + sign*length*u^p`` with ``p = 1/(1+exponent)``."""
    p = 1.0 / (1.0 + exponent)

    def g(u):
        x = anchor + sign * length * u**p
        if x == anchor:
            x = math.nextafter(anchor, limit)
        return f(x) * length * p * u ** (p - 1.0)

    return g


_MIN_EPSREL = 50 * np.finfo(float).eps  # QUADPACK refuses anything tighter


def _qk(g, a, b, rel_tol):
    value, err, *info = integrate.quad(
        g, a, b, epsabs=0.0, epsrel=max(rel_tol / 4.0, _MIN_EPSREL), limit=400, full_output=1
    )
    return value, err, info[0]["neval"] if info else 0


def quad_singular_with_error(f: Callable[[float], float], spec: QuadratureSpec) -> tuple[float, float]:
    """Like :func:`quad_singular` but returns ``(value, error_estimate)``."""
    lo, hi = float(spec.lower), float(spec.upper)
    pieces = []
    if math.isinf(hi):
        split = lo + max(1.0, abs(lo))
        pieces.append(_power_map(f, lo, split - lo, spec.left_exponent, 1.0, split))
        tail = [(f, split, math.inf)]
    else:
        tail = []
        if spec.left_exponent == 0.0 and spec.right_exponent == 0.0:
            tail = [(f, lo, hi)]
        else:
            mid = 0.5 * (lo + hi)
            pieces.append(_power_map(f, lo, mid - lo, spec.left_exponent, 1.0, mid))
            pieces.append(_power_map(f, hi, hi - mid, spec.right_exponent, -1.0, mid))

    total, err = 0.0, 0.0
    for g in pieces:
        v, e, _ = _qk(g, 0.0, 1.0, spec.rel_tol)
        total += v
        err += e
    for g, a, b in tail:
        v, e, _ = _qk(g, a, b, spec.rel_tol)
        total += v
        err += e
    if not math.isfinite(total) or err > spec.rel_tol * max(abs(total), 1e-300):
        raise AccuracyError(
            f"quadrature on [{lo}, {hi}] did not reach rel_tol={spec.rel_tol:g} "
            f"(estimate {total!r}, error {err:.3g})",
            estimate=total,
            error=err,
        )
    return total, err


def quad_singular(f: Callable[[float], float], spec: QuadratureSpec) -> float:
    """Integrate ``f`` over ``spec``'s range, removing declared endpoint singularities.

    Each singular end is straightened by ``x = end ± h*u^(1/(1+e))`` before
    adaptive Gauss-Kronrod refinement. Raises :class:`AccuracyError` if the
    error estimate exceeds ``spec.rel_tol`` relative to the result.

    >>> round(quad_singular(lambda x: x**-0.5, QuadratureSpec(0.0, 1.0, -0.5)), 12)
    2.0
    """
    return quad_singular_with_error(f, spec)[0]


def find_root(f: Callable[[float], float], lo: float, hi: float, tol: float = DEFAULT_ROOT_TOL) -> float:
    """Root of a monotone ``f`` in ``[lo, hi]`` by Brent's method.

    Raises :class:`BracketError` when ``f(lo)`` and ``f(hi)`` share a strict sign.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f(lo)={flo!r}, f(hi)={fhi!r}")
    return optimize.brentq(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500)
