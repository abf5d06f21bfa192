import math

import mpmath
import numpy as np
import pytest
from scipy import special
from scipy.integrate import quad as scipy_quad

from src.core.exceptions import DomainError
from src.exciton.models import EULER_GAMMA
from src.exciton.quadrature import gauss_legendre
from src.exciton.specfun import (
    EllipticModulus,
    digamma,
    elliptic_k,
    elliptic_k_complement,
    kummer_u_b2,
    laguerre,
    laguerre1,
    whittaker_point,
    whittaker_square_integral,
    whittaker_w,
)


class TestDigamma:
    def test_special_values(self):
        assert digamma(1.0).value == pytest.approx(-EULER_GAMMA, abs=1e-14)
        assert digamma(0.5).value == pytest.approx(-EULER_GAMMA - 2 * math.log(2), abs=1e-14)

    @pytest.mark.parametrize("x", [0.3, 1.7, 5.2, 11.0, -0.4, -2.7])
    def test_recurrence(self, x):
        assert digamma(x + 1).value - digamma(x).value == pytest.approx(1 / x, abs=1e-12)

    @pytest.mark.parametrize("x", [0.2, 0.7, -1.3, 2.45])
    def test_reflection(self, x):
        difference = digamma(1 - x).value - digamma(x).value
        assert difference == pytest.approx(math.pi / math.tan(math.pi * x), rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("x", [1e-3, 0.25, 3.5, 40.0, 1e6, -0.5, -3.999, -7.25])
    def test_matches_scipy(self, x):
        assert digamma(x).value == pytest.approx(special.digamma(x), rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("pole", [0.0, -1.0, -3.0])
    def test_poles_raise(self, pole):
        with pytest.raises(DomainError):
            digamma(pole)

    def test_error_estimate_is_small(self):
        assert digamma(2.5).est_abs_error < 1e-13


class TestLaguerre:
    @pytest.mark.parametrize("n", range(7))
    @pytest.mark.parametrize("order", [1.0, 2.0])
    def test_matches_scipy(self, n, order):
        z = np.linspace(0.0, 12.0, 25)
        np.testing.assert_allclose(
            laguerre(n, order, z), special.eval_genlaguerre(n, order, z), rtol=1e-10, atol=1e-11
        )

    def test_scalar_input(self):
        assert laguerre1(2, 1.5) == pytest.approx(special.eval_genlaguerre(2, 1, 1.5), rel=1e-14)
        assert laguerre1(0, 3.0) == 1.0

    def test_negative_degree_raises(self):
        with pytest.raises(DomainError):
            laguerre(-1, 1.0, 0.5)


class TestKummerU:
    @pytest.mark.parametrize("a", [0.3, 0.7, 1.5, 2.4])
    @pytest.mark.parametrize("z", [0.5, 1.0, 3.0])
    def test_matches_mpmath(self, a, z):
        expected = float(mpmath.hyperu(a, 2, z))
        assert kummer_u_b2(a, z).value == pytest.approx(expected, rel=1e-8)

    @pytest.mark.parametrize("n_index", [1, 2, 3])
    def test_integer_reduction_to_laguerre(self, n_index):
        """U(1−N, 2, z) is a constant multiple of L¹_{N−1}(z)."""
        ratios = [
            kummer_u_b2(1 - n_index, z).value / laguerre1(n_index - 1, z) for z in (0.5, 1.0, 3.0)
        ]
        assert max(ratios) - min(ratios) < 1e-8

    def test_zero_parameter(self):
        assert kummer_u_b2(0.0, 2.0).value == 1.0

    def test_nonpositive_argument_raises(self):
        with pytest.raises(DomainError):
            kummer_u_b2(0.5, 0.0)


class TestWhittaker:
    @pytest.mark.parametrize("z", [0.1, 1.0, 7.5, 30.0])
    def test_integer_alpha_is_elementary(self, z):
        assert whittaker_w(1.0, z).value == pytest.approx(z * math.exp(-z / 2), rel=1e-14)
        assert whittaker_w(2.0, z).value == pytest.approx(
            (z * z - 2 * z) * math.exp(-z / 2), rel=1e-12, abs=1e-14
        )

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.8])
    @pytest.mark.parametrize("z", [0.01, 0.5, 2.0, 10.0, 35.0])
    def test_matches_mpmath(self, alpha, z):
        expected = float(mpmath.whitw(alpha, 0.5, z))
        assert whittaker_w(alpha, z).value == pytest.approx(expected, rel=1e-8)

    @pytest.mark.parametrize("alpha", [0.4, 0.75])
    @pytest.mark.parametrize("z", [0.5, 2.0])
    def test_consistent_with_kummer(self, alpha, z):
        """W_{α,1/2}(z) = z e^{−z/2} U(1−α, 2, z)."""
        expected = z * math.exp(-z / 2) * kummer_u_b2(1 - alpha, z).value
        assert whittaker_w(alpha, z).value == pytest.approx(expected, rel=1e-8, abs=1e-12)

    def test_derivative_matches_finite_difference(self):
        h = 1e-5
        _, dw = whittaker_point(0.6, 1.3)
        numeric = (whittaker_w(0.6, 1.3 + h).value - whittaker_w(0.6, 1.3 - h).value) / (2 * h)
        assert dw == pytest.approx(numeric, rel=1e-6)

    def test_value_at_origin(self):
        """W_{α,1/2}(0⁺) = 1/Γ(1−α)."""
        assert whittaker_w(0.5, 1e-12).value == pytest.approx(1 / math.gamma(0.5), rel=1e-9)

    def test_square_integral_matches_direct_quadrature(self):
        alpha = 0.5

        def squared(z):
            return whittaker_w(alpha, z).value ** 2

        pieces = [
            scipy_quad(squared, a, b, limit=200, epsabs=1e-13, epsrel=1e-12)[0]
            for a, b in ((0, 1), (1, 10), (10, 30))
        ]
        assert whittaker_square_integral(alpha).value == pytest.approx(sum(pieces), rel=1e-8)

    @pytest.mark.parametrize("alpha", [1.0, 0.0, -0.5])
    def test_square_integral_rejects_integer_or_nonpositive_alpha(self, alpha):
        with pytest.raises(DomainError):
            whittaker_square_integral(alpha)

    def test_nonpositive_argument_raises(self):
        with pytest.raises(DomainError):
            whittaker_w(0.5, -1.0)


class TestEllipticK:
    @pytest.mark.parametrize("m", [0.0, 0.1, 0.5, 0.9, 0.999999])
    def test_matches_scipy(self, m):
        assert elliptic_k(m).value == pytest.approx(special.ellipk(m), rel=1e-13)

    def test_matches_gauss_legendre(self):
        nodes, weights = gauss_legendre(40)
        theta = 0.5 * math.pi * nodes
        integral = 0.5 * math.pi * np.sum(weights / np.sqrt(1 - 0.9 * np.sin(theta) ** 2))
        assert elliptic_k(0.9).value == pytest.approx(integral, rel=1e-10)

    def test_complement_keeps_logarithmic_accuracy(self):
        m1 = 1e-20
        expected = math.log(4.0) - 0.5 * math.log(m1)
        value = elliptic_k(EllipticModulus.from_complement(m1)).value
        assert value == pytest.approx(expected, rel=1e-12)

    def test_vectorised_complement(self):
        m1 = np.array([1.0, 0.5, 1e-6])
        np.testing.assert_allclose(elliptic_k_complement(m1), special.ellipkm1(m1), rtol=1e-13)

    @pytest.mark.parametrize("m", [1.0, 1.5, -0.1])
    def test_outside_domain_raises(self, m):
        with pytest.raises(DomainError):
            elliptic_k(m)
