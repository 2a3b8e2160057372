"""Normalization of an expanded potential and the double-scaling constants.

A Taylor-expanded U is brought to the normal form

    U_p(x) = x^{p+1}/(p+1) + sum_{n=2}^{deg} s_{n-1} x^n / n + a_0

by the substitution x -> x/lambda with lambda = (a_{p+1} (p+1))^{1/(p+1)},
giving couplings s_{n-1} = n a_n lambda^{-n}. Even kernels populate only odd
couplings through degree p-1; the gamma-eta family keeps every coupling
through degree p.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import mpmath as mp
from mpmath import mpf

from .errors import NonPositiveG, NonPositiveLeadingCoefficient
from .precision import to_decimal
from .series import TaylorSeries


@dataclass(frozen=True)
class ScaledPotential:
    """Normalized degree-(p+1) potential with couplings s_1..s_{deg-1}."""

    p: int
    s: tuple            # s_1 .. s_{couplings_through-1}
    a0: mpf
    lam: mpf            # the rescale factor
    residuals: dict     # degrees dropped by the normal form -> coefficient

    def coupling(self, k: int) -> mpf:
        """s_k, zero when absent."""
        if 1 <= k <= len(self.s):
            return self.s[k - 1]
        return mpf(0)

    def coefficient(self, n: int) -> mpf:
        """Coefficient of x^n of the normalized potential (s_{n-1}/n)."""
        if n == self.p + 1:
            return mpf(1) / n
        return self.coupling(n - 1) / n

    def u_series(self, order: int | None = None) -> TaylorSeries:
        """Rebuild the normalized series (constant term included)."""
        k = order if order is not None else self.p + 1
        c = [mpf(0)] * (k + 1)
        c[0] = self.a0
        for n in range(2, min(len(self.s) + 2, k + 1)):
            c[n] = self.coupling(n - 1) / n
        if self.p + 1 <= k:
            c[self.p + 1] = mpf(1) / (self.p + 1)
        return TaylorSeries(c)

    def to_json(self) -> str:
        return json.dumps({
            "p": self.p,
            "lambda": to_decimal(self.lam),
            "a0": to_decimal(self.a0),
            "s": [to_decimal(v) for v in self.s],
        })


@dataclass(frozen=True)
class ModelParams:
    """One (p,1) model instance: size, couplings and scaling constants."""

    p: int
    N: int
    epsilon: mpf
    g: mpf
    s: tuple

    def weighted_couplings(self) -> dict:
        """k -> s_k * epsilon^(p-k) for the nonzero couplings."""
        return {k + 1: sv * self.epsilon ** (self.p - (k + 1))
                for k, sv in enumerate(self.s) if sv != 0}


def rescale_potential(u: TaylorSeries, p: int, *,
                      couplings_through: int | None = None) -> ScaledPotential:
    """Normalize a Taylor-expanded potential for the degree-p model.

    couplings_through: highest x-degree mapped to a coupling (default p-1;
    the gamma-eta pipeline passes p to keep the degree-p term as s_{p-1}).
    Degrees outside the normal form are reported in ``residuals``.
    """
    if u.order < p + 1:
        raise ValueError(f"need the expansion through order {p + 1}, have {u.order}")
    top = u[p + 1]
    if not top > 0:
        raise NonPositiveLeadingCoefficient(
            f"coefficient at degree {p + 1} must be positive, got {mp.nstr(top, 8)}")
    hi = couplings_through if couplings_through is not None else p - 1
    if not 2 <= hi <= p:
        raise ValueError(f"couplings_through must lie in [2, {p}]")
    lam = (top * (p + 1)) ** (mpf(1) / (p + 1))
    s = tuple(n * u[n] * lam ** (-n) for n in range(2, hi + 1))
    residuals = {1: u[1] * lam ** (-1)}
    for n in range(hi + 1, p + 1):
        residuals[n] = n * u[n] * lam ** (-n)
    return ScaledPotential(p=p, s=s, a0=u[0], lam=lam, residuals=residuals)


def cosh_couplings(p: int) -> ScaledPotential:
    """Closed-form couplings of the cosh potential: s_{2j+1} = (p!)^{(2j+2)/(p+1)} / (2j+1)!."""
    if p < 3 or p % 2 == 0:
        raise ValueError("the cosh family needs odd p >= 3")
    s = [mpf(0)] * (p - 2)
    fac = mp.factorial(p)
    for j in range((p - 1) // 2):
        k = 2 * j + 1
        s[k - 1] = fac ** (mpf(2 * j + 2) / (p + 1)) / mp.factorial(k)
    lam = fac ** (-mpf(1) / (p + 1))  # ((p+1)/(p+1)!)^{1/(p+1)} reduces to this
    return ScaledPotential(p=p, s=tuple(s), a0=mpf(1), lam=lam,
                           residuals={1: mpf(0), p: mpf(0)})


def double_scaling(p: int, N: int, s: tuple = (), *, g_mode: str = "corrected",
                   g_override=None) -> ModelParams:
    """epsilon = N^{-1/(p+1)}; g = (1/N)(1 + sum_k s_k eps^{p-k}) or plain 1/N.

    g_override replaces the computed g (used to reproduce rows whose
    reference tables were generated with a foreign g).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if g_mode not in ("corrected", "plain"):
        raise ValueError(f"unknown g mode {g_mode!r}")
    s = tuple(mpf(str(v)) if isinstance(v, float) else mpf(v) for v in s)
    eps = (mpf(1) / N) ** (mpf(1) / (p + 1))
    if g_override is not None:
        g = mpf(g_override)
    elif g_mode == "plain":
        g = mpf(1) / N
    else:
        corr = sum((sv * eps ** (p - (k + 1)) for k, sv in enumerate(s)), mpf(0))
        g = (1 + corr) / N
    if not g > 0:
        raise NonPositiveG(f"computed g = {mp.nstr(g, 8)} <= 0; couplings leave the model's domain")
    return ModelParams(p=p, N=N, epsilon=eps, g=g, s=s)
