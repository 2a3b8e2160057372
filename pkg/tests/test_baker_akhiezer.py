import mpmath as mp
import numpy as np
import pytest
from mpmath import mpf

from xilab.baker_akhiezer import (BAFunction, QUADRATURE_INTEGRANDS,
                                  magnitude_minima, psi_zeros, quadrature_zeros,
                                  reference_table)
from xilab.errors import InsufficientZerosFound, UnknownReference


@pytest.fixture(scope="module")
def cosh_f():
    return BAFunction.from_callable(np.cosh, name="bessel_k")


@pytest.fixture(scope="module")
def mono8_f():
    return BAFunction.from_poly([0, 0, 0, 0, 0, 0, 0, 0, 1 / 8], name="gen_airy")


class TestPsi:
    def test_bessel_values(self, cosh_f):
        # psi(z) = 2 K_{iz}(1); cross-checked against an independent evaluation
        for z in (0.5, 2.0, 3.7):
            want = 2 * mp.besselk(1j * z, 1).real
            got = cosh_f.psi(z).real
            assert abs(got - float(want)) < 1e-12 * max(1.0, abs(float(want)))

    def test_even_moment_closed_form(self, mono8_f):
        # psi(0) = 2 Gamma(1/8) 8^{1/8 - 1}
        want = float(2 * mp.gamma(mpf(1) / 8) * mpf(8) ** (mpf(1) / 8 - 1))
        assert abs(mono8_f.psi(0.0).real - want) < 1e-13

    def test_midpoint_rule_oracle(self, mono8_f):
        # crude independent quadrature at low accuracy
        xs = np.linspace(-mono8_f.x_max, mono8_f.x_max, 400001)
        h = xs[1] - xs[0]
        z = 1.3
        vals = np.exp(-xs ** 8 / 8) * np.cos(z * xs)
        approx = float(np.sum(vals) * h)
        assert abs(mono8_f.psi(z).real - approx) < 1e-8

    def test_symmetry(self, cosh_f):
        for z in (0.7, 4.1):
            assert cosh_f.psi(z) == cosh_f.psi(-z)

    def test_imaginary_part_zeroed(self, cosh_f):
        assert cosh_f.psi(2.5).imag == 0.0

    def test_panel_doubling_stability(self, cosh_f):
        fine = BAFunction.from_callable(np.cosh, name="bessel_k", refine=2)
        scale = abs(fine.psi(0.0).real)
        for z in reference_table("bessel_k").zeros:
            d = abs(cosh_f.psi(z).real - fine.psi(z).real)
            assert d / scale < 1e-12

    @pytest.mark.parametrize("fid", ["gen_airy", "gen_airy_m130", "gen_airy_133"])
    def test_panel_doubling_all_reference_integrands(self, fid):
        coarse = QUADRATURE_INTEGRANDS[fid]()
        fine = BAFunction.from_callable(coarse.u, name=fid, refine=2)
        scale = abs(fine.psi(0.0).real)
        for z in reference_table(fid).zeros:
            d = abs(coarse.psi(z).real - fine.psi(z).real)
            assert d / scale < 1e-12

    def test_from_scaled_potential_wires_coefficients(self):
        from xilab.scaling import cosh_couplings
        sp = cosh_couplings(7)
        via_scaled = BAFunction.from_scaled_potential(sp)
        cs = [0.0] * 9
        for n in range(2, 8):
            cs[n] = float(sp.coefficient(n))
        cs[8] = 1.0 / 8
        via_poly = BAFunction.from_poly(cs, name="manual")
        assert np.array_equal(via_scaled.xs, via_poly.xs)
        assert np.array_equal(via_scaled.env, via_poly.env)
        # truncated-potential zeros sit near the full-kernel zeros over lambda
        zs = psi_zeros(via_scaled, 1).zeros
        lam = float(sp.lam)
        assert abs(zs[0] * lam - 2.96255) < 0.2

    def test_tail_invariant(self, cosh_f):
        # envelope at the cutoff is below 10^{-(dps+5)}
        assert np.exp(-np.cosh(cosh_f.x_max)) < 10.0 ** (-(mp.mp.dps + 5)) * 1e3


class TestZeros:
    def test_bessel_zeros(self, cosh_f):
        got = psi_zeros(cosh_f, 3)
        for z, want in zip(got.zeros, (2.96255, 4.53449, 5.87987)):
            assert abs(z - want) < 1e-3

    def test_gen_airy_zeros(self, mono8_f):
        got = psi_zeros(mono8_f, 3)
        for z, want in zip(got.zeros, (2.56503, 5.08746, 7.53357)):
            assert abs(z - want) < 1e-3

    @pytest.mark.parametrize("fid", ["gen_airy_m130", "gen_airy_133"])
    def test_reference_rows_by_quadrature(self, fid):
        got = quadrature_zeros(fid, 3)
        want = reference_table(fid).zeros
        for z, w in zip(got.zeros, want):
            assert abs(z - w) < 1e-3

    def test_zeros_are_simple_sign_changes(self, cosh_f):
        zs = psi_zeros(cosh_f, 3).zeros
        for z in zs:
            lo = cosh_f.psi(z - 1e-6).real
            hi = cosh_f.psi(z + 1e-6).real
            assert lo * hi < 0

    def test_only_real_zeros_found_for_cosh(self, cosh_f):
        # the potential's derivative at imaginary argument has only real
        # zeros (sinh(iu)/i = sin u); consistent with a clean real-zero scan
        u = np.linspace(0.1, 9.0, 2000)
        vals = np.sin(u)
        got = psi_zeros(cosh_f, 3)
        assert len(got.zeros) == 3
        assert np.sign(vals[0]) > 0  # sin is real on the scan window

    def test_exhausted_window_raises(self, cosh_f):
        with pytest.raises(InsufficientZerosFound):
            psi_zeros(cosh_f, 50, z_max=8.0)

    def test_magnitude_minima_finds_dips(self):
        # even case: |psi| dips at the real zeros
        f = QUADRATURE_INTEGRANDS["bessel_k"]()
        dips = magnitude_minima(f, 2)
        assert abs(dips[0] - 2.96255) < 5e-2

    def test_corrected_gamma_eta_dips_at_zeta_zeros(self):
        f = QUADRATURE_INTEGRANDS["eta_gamma_corrected"]()
        dips = magnitude_minima(f, 2)
        assert abs(dips[0] - 14.1347) < 5e-2
        assert abs(dips[1] - 21.022) < 5e-2

    def test_row_gamma_kernel_is_dip_free(self):
        # the catalogued row potential transforms to a zero-free Gamma kernel
        f = QUADRATURE_INTEGRANDS["eta_gamma"]()
        assert magnitude_minima(f, 1) == []


class TestReferenceTable:
    def test_known_ids(self):
        assert reference_table("riemann").zeros == (14.1347, 21.022, 25.0109)
        assert reference_table("ramanujan").zeros == (9.22238, 13.90755, 17.442777)
        assert reference_table("airy").zeros == (-2.33811, -4.08795, -5.52056)
        assert reference_table("gen_airy").zeros[0] == 2.56503

    def test_unknown_id(self):
        with pytest.raises(UnknownReference):
            reference_table("nope")

    def test_provenance(self):
        assert reference_table("riemann").provenance == "published-table"
        assert quadrature_zeros("bessel_k").provenance == "quadrature"
