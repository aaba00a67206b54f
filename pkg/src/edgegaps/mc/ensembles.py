"""Tridiagonal beta-ensemble samplers, Sturm counting and edge windows.

Normalizations follow the weights ``exp(-beta x^2/2)`` (Gaussian) and
``x^(beta a/2) exp(-beta x/2)`` (Laguerre), so the Gaussian spectrum edge sits
near ``sqrt(2N)`` and the Laguerre bulk fills ``(0, 4N)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConstructionError, DomainError, UsageError

KINDS = ("gaussian", "laguerre")


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    N: int
    beta: float = 2.0
    a: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConstructionError(f"ensemble kind must be one of {KINDS}, got {self.kind!r}")
        if int(self.N) != self.N or self.N < 1:
            raise ConstructionError(f"N must be a positive integer, got {self.N!r}")
        object.__setattr__(self, "N", int(self.N))
        if not self.beta > 0:
            raise ConstructionError(f"beta must be positive, got {self.beta}")
        if self.kind == "gaussian" and self.a != 0:
            raise UsageError("the exponent a only applies to the laguerre ensemble")
        if self.kind == "laguerre" and not self.min_chi_shape > 0:
            raise ConstructionError(
                f"smallest chi shape beta*a + 2 = {self.min_chi_shape:g} must be positive (a > -2/beta)"
            )

    @property
    def laguerre_shape(self) -> float:
        """Exponent ``a_B`` of the bidiagonal model: ``beta a/2 + 1 + beta (N-1)/2``."""
        return self.beta * self.a / 2 + 1 + self.beta * (self.N - 1) / 2

    @property
    def min_chi_shape(self) -> float:
        if self.kind == "gaussian":
            return self.beta
        return 2 * self.laguerre_shape - self.beta * (self.N - 1)


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Symmetric tridiagonal matrix; leading axes, if any, index a batch."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d, e = np.asarray(self.diag, float), np.asarray(self.offdiag, float)
        if d.shape[:-1] != e.shape[:-1] or e.shape[-1] != max(d.shape[-1] - 1, 0):
            raise ConstructionError(f"shape mismatch: diag {d.shape}, offdiag {e.shape}")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise ConstructionError("matrix entries must be finite")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def N(self) -> int:
        return self.diag.shape[-1]

    def dense(self) -> np.ndarray:
        if self.diag.ndim != 1:
            raise DomainError("dense() is defined for a single matrix")
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def gershgorin(self) -> tuple[float, float]:
        r = np.zeros_like(self.diag)
        ae = np.abs(self.offdiag)
        r[..., :-1] += ae
        r[..., 1:] += ae
        return float(np.min(self.diag - r)), float(np.max(self.diag + r))

    @staticmethod
    def stack(mats) -> "TridiagonalMatrix":
        mats = list(mats)
        return TridiagonalMatrix(np.stack([m.diag for m in mats]), np.stack([m.offdiag for m in mats]))


def chi(rng: np.random.Generator, shape) -> np.ndarray:
    """Chi variates with (possibly non-integer) degrees of freedom, via ``sqrt(2 Gamma(k/2))``."""
    shape = np.asarray(shape, float)
    if np.any(shape <= 0):
        raise ConstructionError(f"chi degrees of freedom must be positive, got min {shape.min()}")
    return np.sqrt(2.0 * rng.standard_gamma(shape / 2.0))


def sample_gaussian(spec: EnsembleSpec, rng: np.random.Generator) -> TridiagonalMatrix:
    """Hermite beta-ensemble: ``N(0, 1/beta)`` diagonal, ``chi_{beta(N-i)} / sqrt(2 beta)`` off-diagonal."""
    if spec.kind != "gaussian":
        raise UsageError(f"sample_gaussian needs a gaussian spec, got {spec.kind}")
    N, beta = spec.N, spec.beta
    diag = rng.standard_normal(N) / math.sqrt(beta)
    off = chi(rng, beta * np.arange(N - 1, 0, -1)) / math.sqrt(2 * beta)
    return TridiagonalMatrix(diag, off)


def sample_laguerre(spec: EnsembleSpec, rng: np.random.Generator) -> TridiagonalMatrix:
    """Laguerre beta-ensemble as ``B B^T / beta`` with ``B`` lower bidiagonal.

    ``B`` has diagonal ``chi_{2 a_B - beta i}`` and subdiagonal ``chi_{beta (N-1-i)}``,
    ``i = 0..N-1``, with ``a_B`` from :attr:`EnsembleSpec.laguerre_shape`.
    """
    if spec.kind != "laguerre":
        raise UsageError(f"sample_laguerre needs a laguerre spec, got {spec.kind}")
    N, beta = spec.N, spec.beta
    x = chi(rng, 2 * spec.laguerre_shape - beta * np.arange(N))
    y = chi(rng, beta * np.arange(N - 1, 0, -1))
    diag = x * x
    diag[1:] += y * y
    return TridiagonalMatrix(diag / beta, x[:-1] * y / beta)


def sample(spec: EnsembleSpec, rng: np.random.Generator) -> TridiagonalMatrix:
    return sample_gaussian(spec, rng) if spec.kind == "gaussian" else sample_laguerre(spec, rng)


def sturm_count_below(T: TridiagonalMatrix, x):
    """Number of eigenvalues strictly below ``x``, from the signs of the ``LDL^T`` pivots of ``T - x``.

    Batched: for a stack of matrices with batch shape ``B`` and thresholds of
    shape ``X`` the result has shape ``B + X``. Pivots smaller in magnitude than
    ``pivmin = tiny * max(1, max e^2)`` are replaced by ``+pivmin``: every pivot
    decreases in ``x``, so a vanishing pivot is positive just below the shift
    and an eigenvalue equal to ``x`` is not counted.
    """
    d, e = T.diag, T.offdiag
    x = np.asarray(x, float)
    batch = d.shape[:-1]
    expand = (slice(None),) * len(batch) + (None,) * x.ndim
    e2 = e * e
    pivmin = np.finfo(float).tiny * max(1.0, float(e2.max()) if e2.size else 1.0)
    q = d[expand + (0,)] - x
    q = np.where(np.abs(q) < pivmin, pivmin, q)
    count = (q < 0).astype(np.int64)
    for j in range(1, T.N):
        q = d[expand + (j,)] - x - e2[expand + (j - 1,)] / q
        q = np.where(np.abs(q) < pivmin, pivmin, q)
        count += q < 0
    if count.ndim == 0:
        return int(count)
    return count


@dataclass(frozen=True)
class EdgeWindow:
    """Scaled edge interval: hard ``(0, t)`` or soft ``(t, inf)`` in edge coordinates."""

    edge: str
    t: float

    def __post_init__(self):
        if self.edge not in ("hard", "soft"):
            raise UsageError(f"edge must be 'hard' or 'soft', got {self.edge!r}")
        if self.edge == "hard" and self.t < 0:
            raise DomainError(f"hard window needs t >= 0, got {self.t}")

    def raw_interval(self, spec: EnsembleSpec) -> tuple[float, float]:
        N = spec.N
        if self.edge == "hard":
            if spec.kind != "laguerre":
                raise UsageError("the hard edge is realized by the laguerre ensemble only")
            return 0.0, self.t / (4 * N)
        if spec.kind == "gaussian":
            return math.sqrt(2 * N) + self.t / (math.sqrt(2) * N ** (1 / 6)), math.inf
        # Laguerre soft edge fluctuates on the N^{1/3} scale
        return 4 * N + 2 * (2 * N) ** (1 / 3) * self.t, math.inf


def count_in_window(T: TridiagonalMatrix, w: EdgeWindow, spec: EnsembleSpec):
    """Eigenvalues of ``T`` (or of each matrix in a batch) inside the window."""
    lo, hi = w.raw_interval(spec)
    if w.edge == "hard":
        return sturm_count_below(T, hi) - sturm_count_below(T, lo)
    return T.N - sturm_count_below(T, lo)
