"""Large-gap expansions of log gap probabilities as coefficient tables.

An :class:`Expansion` maps basis functions ``t^p`` and ``t^p log t`` to real
coefficients. Hard-edge and bulk expansions are in the gap length ``t``; the
soft-edge expansion is in ``|t|`` for a gap ``(t, inf)`` with ``t -> -inf``.
The log basis is always ``log t`` (natural log of the expansion variable), so
the paper-style ``log t^{1/2}`` and ``log |t|^{-3/4}`` are rescaled on entry.

Identity checks (the beta <-> 4/beta dualities and the beta = 2 factorizations)
compare coefficient tables term by term. Constant terms are reported but not
judged, since the expansions are only claimed up to the ``log`` order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InfeasibleCountError

EDGES = ("hard", "soft", "bulk")


@dataclass(frozen=True, order=True)
class BasisTerm:
    """``t^power``, times ``log t`` when ``with_log``."""

    power: Fraction
    with_log: bool = False

    def __post_init__(self):
        object.__setattr__(self, "power", Fraction(self.power))

    @property
    def is_constant(self) -> bool:
        return self.power == 0 and not self.with_log

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = t ** float(self.power)
        if self.with_log:
            out = out * np.log(t)
        return out

    def label(self) -> str:
        if self.is_constant:
            return "1"
        p = "" if self.power == 0 else ("t" if self.power == 1 else f"t^{self.power}")
        if self.with_log:
            return f"{p} log t".strip()
        return p


CONST = BasisTerm(Fraction(0))
LOG = BasisTerm(Fraction(0), True)


@dataclass(frozen=True)
class Expansion:
    edge: str
    params: dict
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.edge not in EDGES:
            raise DomainError(f"edge must be one of {EDGES}, got {self.edge!r}")

    def coefficient(self, power, with_log: bool = False) -> float:
        return self.terms.get(BasisTerm(Fraction(power), with_log), 0.0)

    def sorted_terms(self) -> list[tuple[BasisTerm, float]]:
        return sorted(self.terms.items(), key=lambda kv: (-kv[0].power, not kv[0].with_log))

    def rescaled(self, c: float) -> "Expansion":
        """Expansion of ``f(c t)`` in powers of ``t``.

        ``(ct)^p log(ct) = c^p t^p log t + c^p log(c) t^p``: the second piece
        lands on the non-log term of the same power.
        """
        if not c > 0:
            raise DomainError(f"scale must be positive, got {c}")
        out: dict = {}
        for term, coef in self.terms.items():
            cp = c ** float(term.power)
            out[term] = out.get(term, 0.0) + coef * cp
            if term.with_log and c != 1.0:
                plain = BasisTerm(term.power)
                out[plain] = out.get(plain, 0.0) + coef * cp * math.log(c)
        return Expansion(self.edge, dict(self.params, scale=c * self.params.get("scale", 1.0)), out)

    def __add__(self, other: "Expansion") -> "Expansion":
        if other.edge != self.edge:
            raise DomainError("cannot add expansions for different edges")
        out = dict(self.terms)
        for term, coef in other.terms.items():
            out[term] = out.get(term, 0.0) + coef
        return Expansion(self.edge, {"sum": [self.params, other.params]}, out)

    def to_rows(self) -> list[dict]:
        return [
            {"power": str(term.power), "log": term.with_log, "label": term.label(), "coefficient": coef}
            for term, coef in self.sorted_terms()
        ]


def _check_beta_n(beta: float, n: float) -> None:
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")


def hard_expansion(beta: float, n: float, a: float = 0.0, uniform: bool = True) -> Expansion:
    """``log E_beta^hard(n; (0, t))`` for large ``t``.

    ``-beta {t/8 - sqrt(t)(n + a/2) + [n^2/2 + na/2 + a(a-1)/4 + a/(2 beta)] log t^{1/2}}``.
    With ``uniform=False`` the ``n``-independent log piece ``a(a-1)/4 + a/(2 beta)``
    is dropped, leaving the bare log-gas prediction for ``1 << n``.
    """
    _check_beta_n(beta, n)
    bracket = n * n / 2 + n * a / 2
    if uniform:
        bracket += a * (a - 1) / 4 + a / (2 * beta)
    terms = {
        BasisTerm(1): -beta / 8,
        BasisTerm(Fraction(1, 2)): beta * (n + a / 2),
        LOG: -beta / 2 * bracket,
    }
    return Expansion("hard", {"beta": beta, "n": n, "a": a, "uniform": uniform}, _prune(terms))


def soft_expansion(beta: float, n: float, uniform: bool = True) -> Expansion:
    """``log E_beta^soft(n; (t, inf))`` for ``t -> -inf``, in powers of ``|t|``.

    ``-beta|t|^3/24 + (sqrt2/3)|t|^{3/2}(beta n + beta/2 - 1)
    + [beta n^2/2 + (beta/2 - 1) n + (1/6)(1 - (2/beta)(1 - beta/2)^2)] log|t|^{-3/4}``.
    ``uniform=False`` drops the ``n``-independent ``1/6`` piece.
    """
    _check_beta_n(beta, n)
    bracket = beta * n * n / 2 + (beta / 2 - 1) * n
    if uniform:
        bracket += (1 - 2 / beta * (1 - beta / 2) ** 2) / 6
    terms = {
        BasisTerm(3): -beta / 24,
        BasisTerm(Fraction(3, 2)): math.sqrt(2) / 3 * (beta * n + beta / 2 - 1),
        LOG: -0.75 * bracket,
    }
    return Expansion("soft", {"beta": beta, "n": n, "uniform": uniform}, _prune(terms, keep={BasisTerm(Fraction(3, 2))}))


def bulk_expansion(beta: float, n: float, rho: float = 1.0) -> Expansion:
    """``log E_beta^bulk(n; (0, t))`` at bulk density ``rho``.

    ``n = 0``: ``-beta (pi rho t)^2/16 + (beta/2 - 1) pi rho t/2 + (1/4)(beta/2 + 2/beta - 3) log(rho t)``.
    ``n > 0``: the ``n``-dependent form with ``(n/2)(1 - beta/2 - beta n/2)(log(4 pi rho t/n) + 1)``.
    The two are separate formulas; the second does not reduce to the first at ``n = 0``.
    """
    _check_beta_n(beta, n)
    if not rho > 0:
        raise DomainError(f"bulk density must be positive, got {rho}")
    pr = math.pi * rho
    terms = {
        BasisTerm(2): -beta * pr * pr / 16,
        BasisTerm(1): (beta * n + beta / 2 - 1) * pr / 2,
    }
    if n == 0:
        c = (beta / 2 + 2 / beta - 3) / 4
        terms[LOG] = c
        terms[CONST] = c * math.log(rho) + 0.0
    else:
        c = n / 2 * (1 - beta / 2 - beta * n / 2)
        terms[LOG] = c
        terms[CONST] = c * (math.log(4 * pr / n) + 1)
    return Expansion("bulk", {"beta": beta, "n": n, "rho": rho, "path": "n=0" if n == 0 else "n>0"}, terms)


def _prune(terms: dict, keep=frozenset()) -> dict:
    # drop exact zeros so "single term" expansions really have one term
    return {k: v for k, v in terms.items() if v != 0.0 or k in keep}


def evaluate(e: Expansion, t):
    """Sum of ``coefficient * basis(t)``; ``t`` is the positive expansion variable (``|t|`` at the soft edge)."""
    arr = np.asarray(t, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("expansions are evaluated at t > 0")
    total = np.zeros_like(arr)
    for term, coef in e.terms.items():
        total = total + coef * term(arr)
    return float(total) if total.ndim == 0 else total


@dataclass(frozen=True)
class DualityScales:
    """Length scales on the two sides of a beta <-> 4/beta duality."""

    s_beta: float
    s_dual: float

    @classmethod
    def hard(cls, beta: float, s_beta: float = 1.0) -> "DualityScales":
        # s_dual (beta/2)^2 = s_beta
        return cls(s_beta, s_beta / (beta / 2) ** 2)

    @classmethod
    def soft(cls, beta: float, s_beta: float = 1.0) -> "DualityScales":
        # (beta/2)^{2/3} s_beta = s_dual
        return cls(s_beta, (beta / 2) ** (2 / 3) * s_beta)


class ResidualRow(NamedTuple):
    term: BasisTerm
    lhs: float
    rhs: float
    residual: float
    relative: float


@dataclass(frozen=True)
class ResidualTable:
    kind: str
    edge: str
    params: dict
    rows: list
    excluded: list  # constant-order rows, beyond the expansions' stated order

    @property
    def max_relative(self) -> float:
        return max((r.relative for r in self.rows), default=0.0)

    def ok(self, tol: float = 1e-13) -> bool:
        return self.max_relative < tol

    def to_dict(self) -> dict:
        conv = lambda r: {"term": r.term.label(), "power": str(r.term.power), "log": r.term.with_log,
                          "lhs": r.lhs, "rhs": r.rhs, "residual": r.residual, "relative": r.relative}
        return {"kind": self.kind, "edge": self.edge, "params": self.params,
                "rows": [conv(r) for r in self.rows], "excluded": [conv(r) for r in self.excluded],
                "max_relative": self.max_relative}


def _relative(lhs: float, rhs: float) -> float:
    if lhs == rhs:
        return 0.0
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs))


def compare(kind: str, lhs: Expansion, rhs: Expansion, params: dict) -> ResidualTable:
    rows, excluded = [], []
    for term in sorted(set(lhs.terms) | set(rhs.terms), key=lambda b: (-b.power, not b.with_log)):
        x, y = lhs.terms.get(term, 0.0), rhs.terms.get(term, 0.0)
        row = ResidualRow(term, x, y, x - y, _relative(x, y))
        (excluded if term.is_constant else rows).append(row)
    return ResidualTable(kind, lhs.edge, params, rows, excluded)


def hard_dual_parameters(beta: float, n: float, a: float) -> tuple[float, float, float]:
    """``(4/beta, beta(n+1)/2 - 1, beta a/2 - beta + 2)``."""
    return 4 / beta, beta * (n + 1) / 2 - 1, beta * a / 2 - beta + 2


def soft_dual_parameters(beta: float, n: float) -> tuple[float, float]:
    """``(4/beta, beta n/2 + beta/2 - 1)``."""
    return 4 / beta, beta * n / 2 + beta / 2 - 1


def hard_duality_residual(beta: float, n: float, a: float = 0.0, s_beta: float = 1.0) -> ResidualTable:
    """Coefficient residuals of the hard-edge beta <-> 4/beta duality.

    Left: the expansion at ``(beta, n, a)`` in the variable ``t/s_beta``. Right:
    the expansion at the dual parameters in ``t/s_dual``. Both are re-expanded
    in ``t``.
    """
    _check_beta_n(beta, n)
    bd, nd, ad = hard_dual_parameters(beta, n, a)
    if nd < 0:
        raise InfeasibleCountError(f"dual count beta(n+1)/2 - 1 = {nd:g} is negative for beta={beta}, n={n}")
    s = DualityScales.hard(beta, s_beta)
    lhs = hard_expansion(beta, n, a).rescaled(1 / s.s_beta)
    rhs = hard_expansion(bd, nd, ad).rescaled(1 / s.s_dual)
    return compare("duality", lhs, rhs, {"beta": beta, "n": n, "a": a, "dual": {"beta": bd, "n": nd, "a": ad},
                                         "scales": {"s_beta": s.s_beta, "s_dual": s.s_dual}})


def soft_duality_residual(beta: float, n: float, s_beta: float = 1.0) -> ResidualTable:
    """Coefficient residuals of the soft-edge duality, comparing in ``|t|`` after ``|t| -> s|t|`` on each side."""
    _check_beta_n(beta, n)
    bd, nd = soft_dual_parameters(beta, n)
    if nd < 0:
        raise InfeasibleCountError(f"dual count beta n/2 + beta/2 - 1 = {nd:g} is negative for beta={beta}, n={n}")
    s = DualityScales.soft(beta, s_beta)
    lhs = soft_expansion(beta, n).rescaled(s.s_beta)
    rhs = soft_expansion(bd, nd).rescaled(s.s_dual)
    return compare("duality", lhs, rhs, {"beta": beta, "n": n, "dual": {"beta": bd, "n": nd},
                                         "scales": {"s_beta": s.s_beta, "s_dual": s.s_dual}})


def factorization_residual(edge: str, n: float, a: float = 0.0) -> ResidualTable:
    """``beta = 2`` expansion minus the sum of the ``beta = 1`` expansions at ``n`` and ``n + 1``.

    At the hard edge both ``beta = 1`` factors carry ``a - 1``.
    """
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    if edge == "hard":
        lhs = hard_expansion(2.0, n, a)
        rhs = hard_expansion(1.0, n, a - 1) + hard_expansion(1.0, n + 1, a - 1)
        params = {"n": n, "a": a}
    elif edge == "soft":
        lhs = soft_expansion(2.0, n)
        rhs = soft_expansion(1.0, n) + soft_expansion(1.0, n + 1)
        params = {"n": n}
    else:
        raise DomainError(f"factorization is defined for the hard and soft edges, got {edge!r}")
    return compare("factorization", lhs, rhs, params)
