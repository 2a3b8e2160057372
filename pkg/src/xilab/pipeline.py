"""End-to-end model runs and the eight standard report rows.

``run_model`` chains expansion -> normalization -> double scaling ->
characteristic polynomial -> roots. ``run_row`` instantiates the eight
catalogued rows with their reference data and calibration conventions.

Row-specific reference data
---------------------------
* riemann: the row's order-8 expansion uses the published coefficient list.
  The direct series expansion of the kernel (``taylor_u``) agrees through
  x^4 but differs at x^6 and x^8; the published couplings are what the
  row's polynomial, root and calibration tables correspond to.
* ramanujan: the row's published tables were generated with the riemann
  row's g, so the row pins g to that value for comparability.
* gen_airy_133: the row's reference integrand carries the coefficient list
  in ``baker_akhiezer._GEN_AIRY_133`` (x^6 weight 3/4).
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mpf

from . import baker_akhiezer as ba
from .calibration import (Calibration, TableRow, airy_fixed_map, estimate_zeros,
                          fit_linear)
from .matrix_model import (CharPolynomial, ModelPotential, build_potential,
                           q_polynomial)
from .potentials import PotentialSpec, taylor_u
from .roots import RootSet, find_roots
from .scaling import (ModelParams, ScaledPotential, cosh_couplings,
                      double_scaling, rescale_potential)

#: published order-8 expansion defining the riemann row (degrees 0..8)
RIEMANN_ROW_U = ("0.112728", "0", "9.3634", "0", "5.95896", "0",
                 "-2.09194", "0", "3.53296")

ROW_IDS = ("airy", "riemann", "ramanujan", "gen_airy", "gen_airy_m130",
           "gen_airy_133", "bessel_k", "eta_gamma")

_ROW_LABELS = {
    "airy": ("Ai(z)", "i x^3/3"),
    "riemann": ("Riemann Xi(z)", "-log(Phi(x))"),
    "ramanujan": ("Ramanujan Xi_L(z)", "-log(Phi_L(x))"),
    "gen_airy": ("Ai_(7,1)(z)", "x^8/8"),
    "gen_airy_m130": ("Ai_(7,1)(z,-1,3,0)", "x^8/8 + 3x^4/4 - x^2/2"),
    "gen_airy_133": ("Ai_(7,1)(z,1,3,3)", "x^8/8 + 3x^6/6 + 3x^4/4 + x^2/2"),
    "bessel_k": ("K_iz(1)", "cosh(x)"),
    "eta_gamma": ("Gamma(iz+1/2) eta(iz+1/2)", "(x+log 2)/2 + e^-(x+log 2) + 1"),
}


@dataclass(frozen=True)
class ModelRun:
    """Artifacts of one pipeline run."""

    spec: PotentialSpec | None
    scaled: ScaledPotential | None
    params: ModelParams
    potential: ModelPotential
    q: CharPolynomial
    roots: RootSet


@dataclass(frozen=True)
class RowResult:
    row_id: str
    run: ModelRun | None
    calibration: Calibration
    estimated_zeros: tuple
    reference: ba.ReferenceZeros
    table_row: TableRow


def run_model(params: ModelParams, *, spec: PotentialSpec | None = None,
              scaled: ScaledPotential | None = None) -> ModelRun:
    """Characteristic polynomial and roots for one parameter set."""
    V = build_potential(params)
    q = q_polynomial(params, V, params.N)
    rts = find_roots(q)
    return ModelRun(spec=spec, scaled=scaled, params=params, potential=V,
                    q=q, roots=rts)


def run_from_spec(spec: PotentialSpec, p: int, N: int, *, g_mode: str = "corrected",
                  g_override=None, couplings_through: int | None = None) -> ModelRun:
    """Expand, normalize and run a potential spec as a (p,1) model."""
    u = taylor_u(spec, p + 1 if couplings_through is None else max(p + 1, couplings_through + 1))
    scaled = rescale_potential(u, p, couplings_through=couplings_through)
    params = double_scaling(p, N, scaled.s, g_mode=g_mode, g_override=g_override)
    return run_model(params, spec=spec, scaled=scaled)


def _riemann_row_scaled(p: int = 7) -> ScaledPotential:
    from .series import TaylorSeries
    u = TaylorSeries([mpf(c) for c in RIEMANN_ROW_U])
    return rescale_potential(u, p)


def _fit_row(run: ModelRun, ref: ba.ReferenceZeros):
    reals = run.roots.real_roots()
    cal = fit_linear(reals, ref)
    est = estimate_zeros(cal, reals)
    return cal, est


def _make_table_row(row_id, run, cal, est, ref) -> TableRow:
    label, udesc = _ROW_LABELS[row_id]
    return TableRow(
        function_id=row_id, label=label, u_description=udesc,
        z3_estimated=est[2], z3_exact=mpf(str(ref.zeros[2])),
        on_critical_line=run.roots.on_critical_line,
        n_complex_pairs=run.roots.n_complex_pairs,
        A=cal.A, c=cal.c,
        estimated_zeros=tuple(est[:3]), reference_zeros=tuple(ref.zeros[:3]))


def run_row(row_id: str, N: int = 16) -> RowResult:
    """One of the eight standard rows at matrix size N."""
    if row_id not in ROW_IDS:
        raise ValueError(f"unknown row {row_id!r}; known: {ROW_IDS}")
    ref = ba.reference_table(row_id if row_id != "eta_gamma" else "riemann")

    if row_id == "airy":
        params = double_scaling(2, N, (), g_mode="plain")
        run = run_model(params)
        cal = airy_fixed_map()
        # zero tables of this row descend; map the largest roots first
        reals = sorted(run.roots.real_roots(), reverse=True)
        est = estimate_zeros(cal, reals)
        row = _make_table_row(row_id, run, cal, est, ref)
        return RowResult(row_id, run, cal, tuple(est), ref, row)

    if row_id == "riemann":
        scaled = _riemann_row_scaled()
        params = double_scaling(7, N, scaled.s)
        run = run_model(params, scaled=scaled)
    elif row_id == "ramanujan":
        spec = PotentialSpec(kind="ramanujan")
        u = taylor_u(spec, 8)
        scaled = rescale_potential(u, 7)
        riemann_g = double_scaling(7, N, _riemann_row_scaled().s).g
        params = double_scaling(7, N, scaled.s, g_override=riemann_g)
        run = run_model(params, spec=spec, scaled=scaled)
    elif row_id == "gen_airy":
        run = run_from_spec(PotentialSpec(kind="monomial", degree=8), 7, N)
    elif row_id == "gen_airy_m130":
        run = run_from_spec(PotentialSpec(kind="explicit", p=7,
                                          s=("-1", "0", "3", "0", "0")), 7, N)
    elif row_id == "gen_airy_133":
        run = run_from_spec(PotentialSpec(kind="explicit", p=7,
                                          s=("1", "0", "3", "0", "3")), 7, N)
    elif row_id == "bessel_k":
        scaled = cosh_couplings(7)
        params = double_scaling(7, N, scaled.s)
        run = run_model(params, scaled=scaled)
    else:  # eta_gamma
        run = run_from_spec(PotentialSpec(kind="eta_gamma"), 19, N,
                            couplings_through=19)

    cal, est = _fit_row(run, ref)
    row = _make_table_row(row_id, run, cal, est, ref)
    return RowResult(row_id, run, cal, tuple(est), ref, row)


def run_all_rows(N: int = 16) -> dict:
    """All eight rows keyed by id; failures propagate to the caller."""
    return {rid: run_row(rid, N=N) for rid in ROW_IDS}
