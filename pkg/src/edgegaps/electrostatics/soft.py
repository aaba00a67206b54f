"""Soft edge: background ``sqrt(x)/pi`` on ``x > 0``, gap ``(0, t)`` holding ``n`` charges.

Coordinates are oriented so the spectrum lies at positive ``x``; the usual
soft-edge variable is ``-x``. The blob occupies ``(t/2 - d, t/2 + d)``, which
keeps the field decaying faster than ``1/z``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass

from ..errors import DomainError, InfeasibleCountError
from ..numerics import (
    DEFAULT_QUAD_RTOL,
    DEFAULT_ROOT_TOL,
    EllipticModulus,
    QuadratureSpec,
    agm_sums,
    elliptic_quartet,
    find_root,
    quad_singular,
)
from .hard import DensitySample, EntropyCheck

_BRACKET_SHRINK = 1e-12


@dataclass(frozen=True)
class SoftEdgeProblem:
    t: float
    n: float = 0.0
    beta: float = 2.0

    def __post_init__(self):
        if not self.t > 0:
            raise DomainError(f"t must be positive, got {self.t}")
        if self.n < 0:
            raise DomainError(f"n must be nonnegative, got {self.n}")
        if not self.beta > 0:
            raise DomainError(f"beta must be positive, got {self.beta}")


@dataclass(frozen=True)
class SoftEdgeSolution:
    problem: SoftEdgeProblem
    d: float
    b1: float
    b2: float
    modulus: EllipticModulus
    v: float
    V1: float
    V2_corrected: float
    V2_legacy: float
    deltaF: float
    logE: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["modulus"] = {"k": self.modulus.k, "kc": self.modulus.kc}
        return d


def _check(d: float, t: float, allow_full: bool) -> tuple[float, float]:
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    half = 0.5 * t
    if d < 0 or d > half or (d == half and not allow_full):
        raise DomainError(f"blob half-width d={d} outside {'[0, t/2]' if allow_full else '[0, t/2)'}")
    return half - d, half + d


def _modulus(d: float, t: float) -> EllipticModulus:
    b1, b2 = 0.5 * t - d, 0.5 * t + d
    # k^2 = b1/b2, kc^2 = 2d/b2 without cancellation
    return EllipticModulus(math.sqrt(b1 / b2), math.sqrt(2.0 * d / b2))


def _field(z, b1, b2, t):
    # sqrt z - P/sqrt(z-t) rationalized with b1 + b2 = t; the direct form loses
    # all digits for |z| >> t, where the two terms agree to O(|z|^-3/2)
    s = cmath.sqrt(z - t)
    P = cmath.sqrt(z - b1) * cmath.sqrt(z - b2)
    return -1j * (b1 * b2) / (s * (cmath.sqrt(z) * s + P))


def soft_field(z: complex, d: float, t: float) -> complex:
    """Complex field ``i (sqrt z - sqrt(z-b1) sqrt(z-b2) / sqrt(z-t))`` off the real cuts.

    The two blob factors are square-rooted separately so that their product has
    a single cut on ``[b1, b2]``.
    """
    b1, b2 = _check(d, t, allow_full=False)
    z = complex(z)
    if z.imag == 0.0 and (z.real <= 0 or b1 <= z.real <= b2 or z.real >= t):
        raise DomainError(f"z={z} lies on a branch cut; use soft_field_boundary for real x")
    return _field(z, b1, b2, t)


def soft_field_boundary(x: float, d: float, t: float) -> complex:
    """Boundary value ``E(x + i0)`` for real ``x > 0`` away from ``b1, b2, t``."""
    b1, b2 = _check(d, t, allow_full=False)
    if x <= 0 or x in (b1, b2, t):
        raise DomainError(f"boundary value undefined at x={x}")
    return _field(complex(x, 0.0), b1, b2, t)


def soft_dphi_dx(x: float, d: float, t: float) -> float:
    """Potential gradient; negative on ``(0, b1)``, positive on ``(b2, t)``, zero on conductors."""
    b1, b2 = _check(d, t, allow_full=False)
    if 0 < x < b1:
        return -math.sqrt((b1 - x) * (b2 - x) / (t - x))
    if b2 < x < t:
        return math.sqrt((x - b1) * (x - b2) / (t - x))
    return -soft_field_boundary(x, d, t).real


def soft_density(x: float, d: float, t: float) -> DensitySample:
    b1, b2 = _check(d, t, allow_full=False)
    if x <= 0:
        raise DomainError(f"density defined for x > 0, got {x}")
    if x in (b1, b2, t):
        raise DomainError(f"density is evaluated off the endpoints, got x={x}")
    if b1 < x < b2:
        return DensitySample(x, math.sqrt((x - b1) * (b2 - x) / (t - x)) / math.pi, "blob")
    if x < t:
        return DensitySample(x, 0.0, "gap")
    return DensitySample(x, math.sqrt((x - b1) * (x - b2) / (x - t)) / math.pi, "outer")


def soft_count(d: float, t: float) -> float:
    """Charge in the blob: ``(2/3pi) sqrt(b2) [t E' - 2 b1 K']`` with ``k^2 = b1/b2``.

    Rewritten through AGM tail sums as ``(2/3pi) b2^(3/2) K' [kc^4/2 - (2 - kc^2) S']``;
    the textbook form cancels to ``O(kc^4)`` as the blob shrinks.
    """
    b1, b2 = _check(d, t, allow_full=True)
    if d == 0:
        return 0.0
    if b1 == 0:
        return 2.0 / (3.0 * math.pi) * t**1.5
    m = _modulus(d, t)
    Kc, S = agm_sums(EllipticModulus(m.kc, m.k))
    q = m.kc * m.kc
    return 2.0 / (3.0 * math.pi) * b2**1.5 * Kc * (0.5 * q * q - (2.0 - q) * S)


def soft_drop(d: float, t: float) -> float:
    """Potential drop ``(2/3) sqrt(b2) [t E - (b2 - b1) K]`` with ``k^2 = b1/b2``."""
    b1, b2 = _check(d, t, allow_full=False)
    if d == 0:
        return math.sqrt(2.0) / 3.0 * t**1.5
    q = elliptic_quartet(_modulus(d, t))
    return 2.0 / 3.0 * math.sqrt(b2) * (t * q.E - (b2 - b1) * q.K)


def soft_count_quadrature(d: float, t: float, rel_tol: float = DEFAULT_QUAD_RTOL) -> float:
    b1, b2 = _check(d, t, allow_full=False)
    if d == 0:
        return 0.0
    f = lambda x: math.sqrt((x - b1) * (b2 - x) / (t - x))
    return quad_singular(f, QuadratureSpec(b1, b2, 0.0, 0.0, rel_tol)) / math.pi


def soft_drop_quadrature(d: float, t: float, rel_tol: float = DEFAULT_QUAD_RTOL) -> float:
    b1, b2 = _check(d, t, allow_full=False)
    f = lambda x: math.sqrt((x - b1) * (x - b2) / (t - x))
    return quad_singular(f, QuadratureSpec(b2, t, 0.0, -0.5, rel_tol))


def left_drop_quadrature(d: float, t: float, rel_tol: float = DEFAULT_QUAD_RTOL) -> float:
    """``phi(0) - phi(b1) = int_0^b1 sqrt((b1-x)(b2-x)/(t-x)) dx``, positive."""
    b1, b2 = _check(d, t, allow_full=False)
    if b1 == 0:
        return 0.0
    f = lambda x: math.sqrt((b1 - x) * (b2 - x) / (t - x))
    return quad_singular(f, QuadratureSpec(0.0, b1, 0.0, 0.0, rel_tol))


def lemma2_H(u: float) -> float:
    """Closed form ``(pi/2)(1 - u^2)`` of the blob-gap energy integral."""
    if not 0.0 <= u <= 1.0:
        raise DomainError(f"u must lie in [0, 1], got {u}")
    return 0.5 * math.pi * (1.0 - u * u)


def lemma2_H_quadrature(u: float, rel_tol: float = DEFAULT_QUAD_RTOL) -> float:
    """``2 int_0^(1-u) (1-x) sqrt(((1-x)^2 - u^2) / (x(2-x))) dx`` evaluated numerically."""
    if not 0.0 <= u <= 1.0:
        raise DomainError(f"u must lie in [0, 1], got {u}")
    if u == 1.0:
        return 0.0

    def f(x):
        w = 1.0 - x
        # (1-x)^2 - u^2 factored to avoid cancellation near x = 1 - u
        r = (w - u) * (w + u) / (x * (2.0 - x))
        return w * math.sqrt(r) if r > 0 else 0.0

    return 2.0 * quad_singular(f, QuadratureSpec(0.0, 1.0 - u, -0.5, 0.0, rel_tol))


def max_soft_count(t: float) -> float:
    """Background charge in ``(0, t)``."""
    return 2.0 / (3.0 * math.pi) * t**1.5


def solve_half_width(n: float, t: float, tol: float = DEFAULT_ROOT_TOL) -> float:
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    n_max = max_soft_count(t)
    if n >= n_max:
        raise InfeasibleCountError(
            f"n={n} does not fit in the gap (0, {t}); need n < 2 t^(3/2) / (3 pi) = {n_max:.6g}",
            n_max=n_max,
        )
    if n == 0:
        return 0.0
    hi = 0.5 * t * (1.0 - _BRACKET_SHRINK)
    if soft_count(hi, t) < n:
        raise InfeasibleCountError(
            f"n={n} is within {n_max - n:.3g} of the maximum {n_max:.6g}; blob unresolvable", n_max=n_max
        )
    # d grows like t^{1/4} at fixed n, so an O(t) bracket tolerance would be far too loose
    return find_root(lambda d: soft_count(d, t) - n, 0.0, hi, tol * math.sqrt(t))


def soft_solve(problem: SoftEdgeProblem, tol: float = DEFAULT_ROOT_TOL) -> SoftEdgeSolution:
    """Blob geometry, energies and ``log E`` for a conditioned soft-edge gap."""
    t, n, beta = problem.t, problem.n, problem.beta
    d = solve_half_width(n, t, tol)
    b1, b2 = 0.5 * t - d, 0.5 * t + d
    v = soft_drop(d, t)
    s = 1.0 / beta - 0.5
    V1 = -v * n / 2.0 + t**3 / 24.0 * (1.0 - 4.0 * d * d / (t * t))
    V2_corrected = s * v
    V2_legacy = soft_legacy_entropy_formula(d, t, beta)
    deltaF = V1 + V2_corrected
    return SoftEdgeSolution(
        problem=problem,
        d=d,
        b1=b1,
        b2=b2,
        modulus=_modulus(d, t),
        v=v,
        V1=V1,
        V2_corrected=V2_corrected,
        V2_legacy=V2_legacy,
        deltaF=deltaF,
        logE=-beta * deltaF,
    )


def soft_entropy_integral_n0(rel_tol: float = 1e-9) -> float:
    """``(1/pi) int_1^inf (x - 1/2)/sqrt(x-1) log((x - 1/2)/(sqrt(x) sqrt(x-1))) dx``.

    The scaled entropy integral for an empty soft-edge gap; the logarithm is
    written as ``log1p(1/(4x(x-1)))/2`` so the slowly decaying tail keeps its digits.
    """

    def f(x):
        u = x - 1.0
        return (x - 0.5) / math.sqrt(u) * 0.5 * math.log1p(0.25 / (x * u))

    return quad_singular(f, QuadratureSpec(1.0, math.inf, -0.5, 0.0, rel_tol)) / math.pi


def soft_entropy_direct(d: float, t: float, rel_tol: float = 1e-9) -> float:
    """``int rho log(rho/rho_b) dx`` over the blob and the outer region, by quadrature.

    This is the entropy integral itself, without the ``(1/beta - 1/2)`` factor.
    """
    b1, b2 = _check(d, t, allow_full=False)
    blob = 0.0
    if d > 0:

        def fb(x):
            r = (x - b1) * (b2 - x) / ((t - x) * x)
            return math.sqrt(r * x) / math.pi * 0.5 * math.log(r) if r > 0 else 0.0

        blob = quad_singular(fb, QuadratureSpec(b1, b2, -0.5, -0.5, rel_tol))

    # x = t*y outside; rho/rho_b squared is 1 + b1 b2 / (x (x - t))
    p = b1 * b2 / (t * t)

    def fo(y):
        w = y - 1.0
        return t**1.5 * math.sqrt((y - b1 / t) * (y - b2 / t) / w) / math.pi * 0.5 * math.log1p(p / (y * w))

    outer = quad_singular(fo, QuadratureSpec(1.0, math.inf, -0.5, 0.0, rel_tol))
    return blob + outer


def soft_legacy_entropy_formula(d: float, t: float, beta: float, rel_tol: float = 1e-10) -> float:
    """The rejected entropy term from its closed form (``d = 0``) or potential-drop form (``d > 0``).

    ``d = 0``: ``(1/beta - 1/2)(t^{3/2}/3)(sqrt 2 - 1/2)``.
    ``d > 0``: ``(1/beta - 1/2)[v/2 + (phi(0) - phi(b1))/2]``, the left drop by quadrature.
    The left drop enters as a positive quantity; with the opposite sign the
    formula would not reduce to the ``d = 0`` value.
    """
    _check(d, t, allow_full=False)
    s = 1.0 / beta - 0.5
    if d == 0:
        return s * t**1.5 / 3.0 * (math.sqrt(2.0) - 0.5)
    return s * 0.5 * (soft_drop(d, t) + left_drop_quadrature(d, t, rel_tol))


def soft_legacy_entropy(d: float, t: float, beta: float, rel_tol: float = 1e-9) -> EntropyCheck:
    """Rejected soft-edge entropy: formula checked against direct quadrature of its definition."""
    s = 1.0 / beta - 0.5
    closed = soft_legacy_entropy_formula(d, t, beta, rel_tol)
    if s == 0.0:
        return EntropyCheck(0.0, closed, 0.0)
    if d == 0:
        quad = s * t**1.5 * soft_entropy_integral_n0(rel_tol)
    else:
        quad = s * soft_entropy_direct(d, t, rel_tol)
    return EntropyCheck(quad, closed, quad - closed)
