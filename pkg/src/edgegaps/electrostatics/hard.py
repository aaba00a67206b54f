"""Hard edge: background ``1/(2 pi sqrt(x))``, gap ``(0, t)`` holding ``n`` charges.

The conditioned charges form a blob on ``(0, b)``; the blob and ``(t, inf)``
are conductors at potentials ``-v`` and ``0``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

from ..errors import DomainError, InfeasibleCountError
from ..numerics import (
    DEFAULT_QUAD_RTOL,
    DEFAULT_ROOT_TOL,
    EllipticModulus,
    QuadratureSpec,
    complement_difference,
    find_root,
    quad_singular,
)

_BRACKET_SHRINK = 1e-12


class DensitySample(NamedTuple):
    x: float
    rho: float
    region: str  # "blob" | "gap" | "outer"


class EntropyCheck(NamedTuple):
    """An entropy integral by quadrature next to its closed form; ``difference`` is quadrature minus closed form."""

    quadrature: float
    closed_form: float
    difference: float


@dataclass(frozen=True)
class HardEdgeProblem:
    t: float
    n: float = 0.0
    a: float = 0.0
    beta: float = 2.0

    def __post_init__(self):
        if not self.t > 0:
            raise DomainError(f"t must be positive, got {self.t}")
        if self.n < 0:
            raise DomainError(f"n must be nonnegative, got {self.n}")
        if not self.beta > 0:
            raise DomainError(f"beta must be positive, got {self.beta}")

    @property
    def a_prime(self) -> float:
        """Strength of the fixed charge at the origin."""
        return (self.a - 1.0) / 2.0 + 1.0 / self.beta


@dataclass(frozen=True)
class HardEdgeSolution:
    problem: HardEdgeProblem
    b: float
    modulus: EllipticModulus
    v: float
    V1: float
    V1prime: float
    V2_corrected: float
    V2_legacy: float
    deltaF: float
    logE: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["modulus"] = {"k": self.modulus.k, "kc": self.modulus.kc}
        return d


def _check_geometry(b: float, t: float, allow_full: bool) -> None:
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    if b < 0 or b > t or (b == t and not allow_full):
        raise DomainError(f"blob endpoint b={b} outside {'[0, t]' if allow_full else '[0, t)'} for t={t}")


def _on_cut(z: complex, b: float, t: float) -> bool:
    return z.imag == 0.0 and (z.real <= b or z.real >= t)


def hard_field(z: complex, b: float, t: float) -> complex:
    """Complex field ``(i / 2 sqrt z) (1 - sqrt(z-b)/sqrt(z-t))`` off the real cuts."""
    z = complex(z)
    _check_geometry(b, t, allow_full=False)
    if _on_cut(z, b, t):
        raise DomainError(f"z={z} lies on a branch cut; use hard_field_boundary for real x")
    return _field(z, b, t)


def _field(z, b, t):
    return 0.5j / cmath.sqrt(z) * (1.0 - cmath.sqrt(z - b) / cmath.sqrt(z - t))


def hard_field_boundary(x: float, b: float, t: float) -> complex:
    """Boundary value ``E(x + i0)`` for real ``x > 0``, ``x`` not in ``{b, t}``."""
    _check_geometry(b, t, allow_full=False)
    if x <= 0 or x == b or x == t:
        raise DomainError(f"boundary value undefined at x={x}")
    # signed zero keeps each principal sqrt on its upper-half-plane side
    return _field(complex(x, 0.0), b, t)


def hard_dphi_dx(x: float, b: float, t: float) -> float:
    """``d phi/dx = -Re E(x + i0)``; nonzero only in the gap ``(b, t)``."""
    if b < x < t:
        return 0.5 * math.sqrt((x - b) / (x * (t - x)))
    return -hard_field_boundary(x, b, t).real


def hard_density(x: float, b: float, t: float) -> DensitySample:
    """Equilibrium density after conditioning."""
    _check_geometry(b, t, allow_full=False)
    if x <= 0:
        raise DomainError(f"density defined for x > 0, got {x}")
    if x == b or x == t:
        raise DomainError(f"density is evaluated off the endpoints, got x={x}")
    if x < b:
        return DensitySample(x, math.sqrt((b - x) / (x * (t - x))) / (2 * math.pi), "blob")
    if x < t:
        return DensitySample(x, 0.0, "gap")
    return DensitySample(x, math.sqrt((x - b) / (x * (x - t))) / (2 * math.pi), "outer")


def hard_count(b: float, t: float) -> float:
    """Charge in the blob ``(0, b)``: ``(sqrt t / pi) [E - (1 - k^2) K]`` with ``k^2 = b/t``."""
    _check_geometry(b, t, allow_full=True)
    return math.sqrt(t) / math.pi * complement_difference(EllipticModulus.from_ratio(b, t))


def hard_drop(b: float, t: float) -> float:
    """Potential drop ``v = sqrt(t) [E' - k^2 K']`` between the blob and the outer conductor."""
    _check_geometry(b, t, allow_full=False)
    m = EllipticModulus.from_ratio(b, t)
    return math.sqrt(t) * complement_difference(EllipticModulus(m.kc, m.k))


def hard_count_quadrature(b: float, t: float, rel_tol: float = DEFAULT_QUAD_RTOL) -> float:
    """``int_0^b rho(x) dx`` evaluated numerically."""
    _check_geometry(b, t, allow_full=False)
    if b == 0:
        return 0.0
    f = lambda x: math.sqrt((b - x) / (x * (t - x))) / (2 * math.pi)
    return quad_singular(f, QuadratureSpec(0.0, b, -0.5, 0.0, rel_tol))


def hard_drop_quadrature(b: float, t: float, rel_tol: float = DEFAULT_QUAD_RTOL) -> float:
    """``int_{sqrt b}^{sqrt t} sqrt((x^2 - b)/(t - x^2)) dx`` evaluated numerically."""
    _check_geometry(b, t, allow_full=False)
    f = lambda x: math.sqrt((x * x - b) / (t - x * x))
    return quad_singular(f, QuadratureSpec(math.sqrt(b), math.sqrt(t), 0.0, -0.5, rel_tol))


def max_hard_count(t: float) -> float:
    """Total background charge in ``(0, t)``; the blob cannot hold more."""
    return math.sqrt(t) / math.pi


def solve_blob_endpoint(n: float, t: float, tol: float = DEFAULT_ROOT_TOL) -> float:
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    n_max = max_hard_count(t)
    if n >= n_max:
        raise InfeasibleCountError(
            f"n={n} does not fit in the gap (0, {t}); need n < sqrt(t)/pi = {n_max:.6g}", n_max=n_max
        )
    if n == 0:
        return 0.0
    hi = t * (1.0 - _BRACKET_SHRINK)
    if hard_count(hi, t) < n:
        raise InfeasibleCountError(
            f"n={n} is within {n_max - n:.3g} of the maximum {n_max:.6g}; blob endpoint unresolvable",
            n_max=n_max,
        )
    return find_root(lambda b: hard_count(b, t) - n, 0.0, hi, tol * t)


def hard_solve(problem: HardEdgeProblem, tol: float = DEFAULT_ROOT_TOL) -> HardEdgeSolution:
    """Blob geometry, energies and ``log E`` for a conditioned hard-edge gap.

    ``logE`` uses the corrected entropy ``(1/beta - 1/2) v``; the legacy value
    ``(1/beta - 1/2) v / 2`` is reported alongside for comparison.
    """
    t, n, beta = problem.t, problem.n, problem.beta
    b = solve_blob_endpoint(n, t, tol)
    v = math.sqrt(t) if b == 0 else hard_drop(b, t)
    s = 1.0 / beta - 0.5
    V1 = -v * n / 2.0 + (t - b) / 8.0
    V1prime = -problem.a_prime * v + 0.0  # no negative zero when a_prime = 0
    V2_corrected = s * v
    V2_legacy = s * v / 2.0
    # V1' + V2 = -(a/2) v: summed first so it cancels exactly at a = 0
    deltaF = V1 + (V1prime + V2_corrected)
    return HardEdgeSolution(
        problem=problem,
        b=b,
        modulus=EllipticModulus.from_ratio(b, t),
        v=v,
        V1=V1,
        V1prime=V1prime,
        V2_corrected=V2_corrected,
        V2_legacy=V2_legacy,
        deltaF=deltaF,
        logE=-beta * deltaF,
    )


def _entropy_integrals(b: float, t: float, rel_tol: float) -> float:
    """``(1/pi) [int_0^sqrt(b) g log g + int_sqrt(t)^inf h log h]`` with the density ratios g, h."""
    inner = 0.0
    if b > 0:

        def blob(x):
            x2 = x * x
            r = (b - x2) / (t - x2)
            return 0.5 * math.sqrt(r) * math.log(r) if r > 0 else 0.0

        inner = quad_singular(blob, QuadratureSpec(0.0, math.sqrt(b), 0.0, -0.5, rel_tol))

    st = math.sqrt(t)

    # x = sqrt(t) * y; log h = log1p((t - b)/(x^2 - t)) / 2 keeps the tail accurate
    def outer(y):
        u = y * y - 1.0
        return st * 0.5 * math.sqrt((y * y - b / t) / u) * math.log1p((1.0 - b / t) / u)

    outer_val = quad_singular(outer, QuadratureSpec(1.0, math.inf, -0.5, 0.0, rel_tol))
    return (inner + outer_val) / math.pi


def hard_legacy_entropy(b: float, t: float, beta: float, rel_tol: float = 1e-9) -> EntropyCheck:
    """Entropy term ``(1/beta - 1/2) int rho log(rho/rho_b)`` by quadrature.

    This is the uncorrected entropy; its closed form is half the corrected one,
    ``(1/beta - 1/2) v/2``. Both are returned with their difference.
    """
    _check_geometry(b, t, allow_full=False)
    s = 1.0 / beta - 0.5
    v = math.sqrt(t) if b == 0 else hard_drop(b, t)
    quad = s * _entropy_integrals(b, t, rel_tol)
    closed = s * v / 2.0
    return EntropyCheck(quad, closed, quad - closed)
