"""Aberth-Ehrlich simultaneous root finding at working precision.

All roots are iterated together from a deterministic circle of starting
points (Fujiwara bound radius, seeded angular offset), then polished with
Newton steps and conjugate-symmetrized. A root is accepted on backward
error: |Q(r)| measured against the coefficient magnitudes at |r|.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import mpmath as mp
from mpmath import mpc, mpf

from .errors import NoConvergence
from .matrix_model import CharPolynomial
from .precision import to_decimal

DEFAULT_IM_TOLERANCE = mpf("1e-8")


@dataclass(frozen=True)
class RootSet:
    """Roots of a CharPolynomial with residuals and realness flags."""

    roots: tuple            # mpc, ascending by (re, im)
    residuals: tuple        # backward errors, same order
    im_tolerance: mpf
    is_real: tuple          # bool per root
    pair_ids: tuple         # conjugate-pair id or -1, per root

    @property
    def on_critical_line(self) -> bool:
        return all(self.is_real)

    @property
    def n_complex_pairs(self) -> int:
        return sum(1 for r, real in zip(self.roots, self.is_real)
                   if not real and mp.im(r) > 0)

    def real_roots(self) -> list:
        """Ascending real parts of roots flagged real."""
        return [mp.re(r) for r, real in zip(self.roots, self.is_real) if real]

    def complex_pairs(self) -> list:
        """One representative (positive imaginary part) per conjugate pair."""
        return [r for r, real in zip(self.roots, self.is_real)
                if not real and mp.im(r) > 0]

    def to_json(self) -> str:
        return json.dumps({
            "im_tolerance": to_decimal(self.im_tolerance),
            "on_critical_line": self.on_critical_line,
            "roots": [{"re": to_decimal(mp.re(r)), "im": to_decimal(mp.im(r)),
                       "is_real": bool(flag), "pair": pid,
                       "residual": to_decimal(res)}
                      for r, flag, pid, res in zip(self.roots, self.is_real,
                                                   self.pair_ids, self.residuals)],
        })

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["re", "im", "is_real"])
        for r, flag in zip(self.roots, self.is_real):
            w.writerow([mp.nstr(mp.re(r), 17), mp.nstr(mp.im(r), 17), int(flag)])
        return buf.getvalue()


def _poly_and_deriv(coeffs, z):
    p = coeffs[-1]
    dp = mpc(0)
    for c in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _backward_error(coeffs, z):
    p, _ = _poly_and_deriv(coeffs, z)
    az = abs(z)
    scale = mpf(0)
    for n, c in enumerate(coeffs):
        scale += abs(c) * az ** n
    if scale == 0:
        scale = mpf(1)
    return abs(p) / scale


def _fujiwara_radius(coeffs):
    n = len(coeffs) - 1
    lead = abs(coeffs[-1])
    r = mpf(0)
    for k in range(1, n + 1):
        c = abs(coeffs[n - k]) / lead
        if c != 0:
            r = max(r, 2 * c ** (mpf(1) / k))
    return r if r > 0 else mpf(1)


def find_roots(Q: CharPolynomial, *, max_sweeps: int = 200,
               im_tolerance=DEFAULT_IM_TOLERANCE) -> RootSet:
    """All complex roots by Aberth-Ehrlich iteration plus Newton polish."""
    n = Q.N
    coeffs = Q.coeffs
    if n < 1 or coeffs[-1] == 0:
        raise ValueError("need degree >= 1 with a nonzero leading coefficient")
    target = mpf(10) ** (-(mp.mp.dps // 2))

    radius = _fujiwara_radius(coeffs)
    # deterministic, symmetry-breaking start: slight spiral off the circle
    zs = []
    for k in range(n):
        theta = 2 * mp.pi * k / n + mpf("0.3") / n
        r = radius * (mpf(1) / 2 + mpf(k) / (4 * n))
        zs.append(mpc(r * mp.cos(theta), r * mp.sin(theta)))

    converged = [False] * n
    for _ in range(max_sweeps):
        max_step = mpf(0)
        new = list(zs)
        for i in range(n):
            if converged[i]:
                continue
            p, dp = _poly_and_deriv(coeffs, zs[i])
            if p == 0:
                converged[i] = True
                continue
            if dp == 0:
                new[i] = zs[i] * (1 + mpf("1e-10")) + mpf("1e-10")
                continue
            w = p / dp
            ab = mpc(0)
            for j in range(n):
                if j != i:
                    ab += 1 / (zs[i] - zs[j])
            denom = 1 - w * ab
            step = w / denom if denom != 0 else w
            new[i] = zs[i] - step
            max_step = max(max_step, abs(step) / max(abs(zs[i]), mpf(1)))
        zs = new
        if max_step < mpf(10) ** (-(mp.mp.dps - 5)):
            break

    # Newton polish
    for i in range(n):
        for _ in range(6):
            p, dp = _poly_and_deriv(coeffs, zs[i])
            if p == 0 or dp == 0:
                break
            zs[i] = zs[i] - p / dp

    errs = [_backward_error(coeffs, z) for z in zs]
    worst = max(errs)
    if worst > target:
        raise NoConvergence(
            f"worst backward error {mp.nstr(worst, 3)} above target {mp.nstr(target, 3)}; "
            "raise the working precision for this coefficient spread")

    zs, is_real, pair_ids = _symmetrize(zs, im_tolerance)
    order = sorted(range(n), key=lambda i: (mp.re(zs[i]), mp.im(zs[i])))
    zs = [zs[i] for i in order]
    is_real = [is_real[i] for i in order]
    pair_ids = [pair_ids[i] for i in order]
    errs = [_backward_error(coeffs, z) for z in zs]
    return RootSet(roots=tuple(zs), residuals=tuple(errs),
                   im_tolerance=mpf(im_tolerance), is_real=tuple(is_real),
                   pair_ids=tuple(pair_ids))


def _symmetrize(zs, im_tolerance):
    """Zero near-real imaginary parts; average conjugate partners exactly."""
    n = len(zs)
    out = list(zs)
    is_real = [False] * n
    pair_ids = [-1] * n
    used = [False] * n
    for i in range(n):
        if abs(mp.im(out[i])) < mpf(im_tolerance) * (1 + abs(mp.re(out[i]))):
            out[i] = mpc(mp.re(out[i]), 0)
            is_real[i] = True
            used[i] = True
    next_pair = 0
    for i in range(n):
        if used[i]:
            continue
        best, dist = -1, mp.inf
        for j in range(n):
            if j != i and not used[j]:
                d = abs(out[j] - mp.conj(out[i]))
                if d < dist:
                    best, dist = j, d
        if best < 0:
            used[i] = True  # unpaired; leave as-is (cannot happen for real coeffs)
            continue
        a = (out[i] + mp.conj(out[best])) / 2
        out[i], out[best] = a, mp.conj(a)
        pair_ids[i] = pair_ids[best] = next_pair
        next_pair += 1
        used[i] = used[best] = True
    return out, is_real, pair_ids


def classify(rs: RootSet, im_tolerance) -> RootSet:
    """Re-flag an existing root set under a different imaginary tolerance."""
    tol = mpf(im_tolerance)
    zs, is_real, pair_ids = _symmetrize(list(rs.roots), tol)
    return RootSet(roots=tuple(zs), residuals=rs.residuals, im_tolerance=tol,
                   is_real=tuple(is_real), pair_ids=tuple(pair_ids))


def reconstruct_coefficients(rs: RootSet, lead) -> list:
    """Expand lead * prod (b - r_i); oracle for backward-error checks."""
    cs = [mpc(lead)]
    for r in rs.roots:
        nxt = [mpc(0)] * (len(cs) + 1)
        for d, c in enumerate(cs):
            nxt[d + 1] += c
            nxt[d] -= c * r
        cs = nxt
    # imaginary dust cancels for conjugate-symmetric sets
    return [mp.re(c) for c in cs]
