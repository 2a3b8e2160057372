import mpmath as mp
import pytest
from mpmath import mpf

from conftest import assert_rel
from xilab.errors import NonConvergence
from xilab.potentials import (PotentialSpec, phi_ramanujan, phi_riemann,
                              taylor_u, u_eta_gamma, u_eta_gamma_prime)


class TestRiemannKernel:
    def test_value_at_zero(self):
        kv = phi_riemann(0)
        # -log Phi(0) = 0.112728, i.e. Phi(0) = 0.8933938
        assert_rel(-mp.log(kv.phi), "0.112728", "1e-5", "a_0")
        assert_rel(kv.phi, "0.8933938", "1e-6", "Phi(0)")

    def test_second_term_size(self):
        # independent oracle: the n=2 term evaluated directly
        one = mpf(0)
        two = mpf(0)
        for n, acc in ((1, "one"), (2, "two")):
            t = (4 * mp.pi ** 2 * n ** 4 - 6 * mp.pi * n ** 2) * mp.exp(-mp.pi * n * n)
            if n == 1:
                one = t
            else:
                two = t
        want = (64 * mp.pi ** 2 - 24 * mp.pi) * mp.exp(-4 * mp.pi)
        assert abs(two - want) < mpf(10) ** (-30)
        assert_rel(two, "1.94e-3", "5e-3", "n=2 term")

    def test_difference_is_zero(self):
        x = mpf("0.3")
        assert phi_riemann(x).phi - phi_riemann(x).phi == 0

    def test_nonconvergence_error(self):
        with pytest.raises(NonConvergence):
            phi_riemann(0, max_terms=1, term_tolerance=mpf("1e-60"))

    def test_derivative_ratio_matches_u_prime(self):
        # -U'(x) = Phi'(x)/Phi(x), compared on the series side
        u = taylor_u(PotentialSpec(kind="riemann"), 10)
        du = u.differentiate()
        x = mpf("0.1")
        kv = phi_riemann(x)
        lhs = -du.evaluate(x)
        rhs = kv.phi_prime / kv.phi
        # order-9 polynomial truncation of U' limits the match, not precision
        assert abs(lhs - rhs) < mpf("1e-8")


class TestRamanujanKernel:
    def test_constant(self):
        kv = phi_ramanujan(0)
        assert_rel(-mp.log(kv.phi), "6.32813", "1e-5", "a_0")

    def test_tail_limit(self):
        # all product factors -> 1 on the x -> -inf side, leaving
        # log Phi_L = -6x - 2 pi e^{-x}
        x = mpf(-40)
        kv = phi_ramanujan(x)
        assert abs(mp.log(kv.phi) + 6 * x + 2 * mp.pi * mp.exp(-x)) < mpf(10) ** (-40)

    def test_evenness_from_modularity(self):
        # the formula is manifestly asymmetric; equal values at +-x are a
        # genuine cross-check of the implementation
        a = phi_ramanujan(mpf("0.8")).phi
        b = phi_ramanujan(mpf("-0.8")).phi
        assert abs(a - b) / a < mpf(10) ** (-40)

    def test_degree8_truncation_against_point_value(self):
        u8 = taylor_u(PotentialSpec(kind="ramanujan"), 8)
        x = mpf("0.1")
        direct = -mp.log(phi_ramanujan(x).phi)
        # agreement to O(x^10): coefficient there is O(0.1), so ~1e-11
        assert abs(u8.evaluate(x) - direct) < mpf("1e-9")


class TestEtaGamma:
    def test_point_values(self):
        assert_rel(u_eta_gamma(-mp.log(2)), 2, "1e-50", "U(-log 2)")
        want = mp.log(2) / 2 + mpf(1) / 2 + 1
        assert_rel(u_eta_gamma(0), want, "1e-50", "U(0)")

    def test_series_derivative_matches_closed_form(self):
        u = taylor_u(PotentialSpec(kind="eta_gamma"), 12)
        du = u.differentiate()
        # U'(x) = 1/2 - e^{-(x+log2)} = 1/2 - e^{-x}/2
        for n in range(12):
            want = (-1) ** (n + 1) / (2 * mp.factorial(n)) if n >= 1 else mpf(0)
            assert abs(du[n] - want) < mpf(10) ** (-50), f"degree {n}"
        x = mpf("0.2")
        assert abs(du.evaluate(x) - u_eta_gamma_prime(x)) < mpf("1e-12")


class TestTaylorU:
    def test_riemann_low_orders(self):
        u = taylor_u(PotentialSpec(kind="riemann"), 8)
        assert_rel(u[0], "0.112728", "1e-5", "a_0")
        assert_rel(u[2], "9.3634", "1e-4", "a_2")
        assert_rel(u[4], "5.95896", "1e-5", "a_4")
        # the direct expansion's a_6/a_8 (the published row table differs there,
        # see the riemann-row note in pipeline.py)
        assert_rel(u[6], "-2.1510355", "1e-6", "a_6")
        assert_rel(u[8], "6.0543988", "1e-6", "a_8")

    def test_ramanujan_order8(self):
        u = taylor_u(PotentialSpec(kind="ramanujan"), 8)
        for n, want in ((0, "6.32813"), (2, "3.89463"), (4, "0.971962"),
                        (6, "-0.188291"), (8, "0.112629")):
            assert_rel(u[n], want, "1e-5", f"a_{n}")

    def test_cosh(self):
        u = taylor_u(PotentialSpec(kind="cosh"), 6)
        want = [1, 0, mpf(1) / 2, 0, mpf(1) / 24, 0, mpf(1) / 720]
        for n, w in enumerate(want):
            assert abs(u[n] - w) < mpf(10) ** (-55)

    def test_monomial_and_explicit(self):
        u = taylor_u(PotentialSpec(kind="monomial", degree=8), 8)
        assert u[8] == mpf(1) / 8 and all(u[n] == 0 for n in range(8))
        e = taylor_u(PotentialSpec(kind="explicit", p=7, s=("1", "0", "3", "0", "3")), 8)
        assert e[2] == mpf(1) / 2 and e[4] == mpf(3) / 4 and e[6] == mpf(3) / 6
        assert e[8] == mpf(1) / 8

    def test_even_kernels_have_vanishing_odd_coefficients(self):
        tol = mpf(10) ** (-(mp.mp.dps // 2))
        for kind in ("riemann", "ramanujan"):
            u = taylor_u(PotentialSpec(kind=kind), 9)
            for n in (1, 3, 5, 7, 9):
                assert abs(u[n]) < tol, f"{kind} odd a_{n}"

    def test_tail_term_below_tolerance(self):
        # monotone-tail contract: the kernel sums stop only below tolerance
        spec = PotentialSpec(kind="riemann")
        kv = phi_riemann(mpf("0.2"), max_terms=spec.max_terms,
                         term_tolerance=spec.tolerance)
        assert kv.phi > 0

    def test_order_validation(self):
        with pytest.raises(ValueError):
            taylor_u(PotentialSpec(kind="cosh"), 1)


class TestSpecConfig:
    def test_from_config_roundtrip(self):
        spec = PotentialSpec.from_config(
            {"kind": "explicit", "p": 7, "s": ["1", "0", "3"], "max_terms": 32})
        assert spec.p == 7 and spec.s[2] == 3

    def test_unknown_keys_rejected(self):
        with pytest.raises(ValueError):
            PotentialSpec.from_config({"kind": "cosh", "bogus": 1})

    def test_monomial_degree_validated(self):
        with pytest.raises(ValueError):
            PotentialSpec(kind="monomial", degree=7)
