"""Tests for the polynomial x Gaussian moment engine."""

import numpy as np
import pytest
from scipy import integrate

from gausspm import GaussianWeight, PolyExpr, integrate_poly_gaussian, poly_product
from gausspm.moments import squared_radius


def mono(nvars, **powers):
    """Monomial helper: mono(2, x0=2) -> xi_0^2."""
    expo = [0] * nvars
    for key, p in powers.items():
        expo[int(key[1:])] = p
    return PolyExpr(nvars, {tuple(expo): 1.0})


class TestIntegrate:
    def test_constant(self):
        w = GaussianWeight(np.eye(2), np.zeros(2))
        assert np.isclose(integrate_poly_gaussian(PolyExpr.constant(2, 1.0), w), np.pi)

    def test_second_moment(self):
        w = GaussianWeight(np.eye(2), np.zeros(2))
        assert np.isclose(integrate_poly_gaussian(mono(2, x0=2), w), np.pi / 2)

    def test_fourth_moment_analytic(self):
        w = GaussianWeight(np.eye(2), np.zeros(2))
        assert np.isclose(integrate_poly_gaussian(mono(2, x0=4), w), 3 * np.pi / 4)

    def test_fourth_moment_monte_carlo_oracle(self):
        # independent MC oracle for integral xi_0^4 exp(-|xi|^2): 1e7 samples, 3-sigma band
        rng = np.random.default_rng(123)
        total = 0.0
        total_sq = 0.0
        nsamp = 10_000_000
        chunks = 10
        for _ in range(chunks):
            x = rng.standard_normal(nsamp // chunks) / np.sqrt(2.0)  # N(0, 1/2)
            vals = x**4
            total += vals.sum()
            total_sq += (vals**2).sum()
        mean = total / nsamp
        sigma = np.sqrt((total_sq / nsamp - mean**2) / nsamp)
        mc_value = np.pi * mean  # normalize back: integral = pi * E[x^4]
        mc_sigma = np.pi * sigma
        w = GaussianWeight(np.eye(2), np.zeros(2))
        engine = integrate_poly_gaussian(mono(2, x0=4), w).real
        assert abs(engine - mc_value) < 3 * mc_sigma

    def test_scale_and_shift(self):
        # integral (xi - s)^2 weight centered at s equals the centered second moment
        w = GaussianWeight(2.0 * np.eye(2), np.array([0.7, -0.3]), scale=1.5)
        p = mono(2, x0=2)
        got = integrate_poly_gaussian(p, w)
        # analytic: scale * pi/det-sqrt * (Sigma_00 + s0^2), Sigma = Q^-1/2
        want = 1.5 * np.pi / 2.0 * (0.25 + 0.49)
        assert np.isclose(got, want, rtol=1e-13)

    def test_rejects_non_positive_definite(self):
        with pytest.raises(ValueError, match="positive definite"):
            GaussianWeight(np.diag([1.0, -1.0]), np.zeros(2))

    def test_dblquad_oracle_random_instances(self):
        rng = np.random.default_rng(7)
        for _ in range(4):
            # random SPD precision with condition <= ~1e3
            a = rng.uniform(0.05, 3.0)
            b = rng.uniform(0.05, 3.0)
            th = rng.uniform(0, np.pi)
            R = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
            Q = R @ np.diag([a, b]) @ R.T
            s = rng.uniform(-1, 1, size=2)
            terms = {}
            for _ in range(5):
                expo = (int(rng.integers(0, 4)), int(rng.integers(0, 3)))
                terms[expo] = complex(rng.uniform(-1, 1))
            p = PolyExpr(2, terms)
            w = GaussianWeight(Q, s)
            engine = integrate_poly_gaussian(p, w)

            def f(y, x):
                xi = np.array([x, y])
                core = np.exp(-(xi - s) @ Q @ (xi - s))
                return (p(xi) * core).real

            L = 14.0 / np.sqrt(min(a, b))
            ref, _ = integrate.dblquad(f, -L, L, -L, L, epsabs=1e-10, epsrel=1e-10)
            assert abs(engine.real - ref) < 1e-8 * max(1.0, abs(ref))

    def test_linearity(self):
        w = GaussianWeight(np.eye(2), np.array([0.2, 0.1]))
        p1, p2 = mono(2, x0=2), mono(2, x1=3)
        lhs = integrate_poly_gaussian(p1 + 2.5 * p2, w)
        rhs = integrate_poly_gaussian(p1, w) + 2.5 * integrate_poly_gaussian(p2, w)
        assert np.isclose(lhs, rhs, rtol=1e-14)

    @pytest.mark.parametrize("degree", [0, 2, 4, 6])
    def test_precision_scaling_law(self, degree):
        # integral xi^k exp(-t xi Q xi) = t^{-(D+k)/2} integral xi^k exp(-xi Q xi)
        t = 3.7
        p = mono(2, x0=degree)
        base = integrate_poly_gaussian(p, GaussianWeight(np.eye(2), np.zeros(2)))
        scaled = integrate_poly_gaussian(p, GaussianWeight(t * np.eye(2), np.zeros(2)))
        assert np.isclose(scaled, base * t ** (-(2 + degree) / 2), rtol=1e-13)

    def test_conjugate_symmetry(self):
        w = GaussianWeight(np.eye(2), np.array([0.3, -0.5]))
        p = PolyExpr(2, {(1, 0): 1.0 + 2.0j, (0, 2): -0.5j, (0, 0): 0.2})
        assert np.isclose(
            integrate_poly_gaussian(p.conjugate(), w),
            np.conj(integrate_poly_gaussian(p, w)),
            rtol=1e-14,
        )


class TestPolyAlgebra:
    def test_difference_of_squares(self):
        one_plus = PolyExpr.affine([1.0, 0.0], 1.0)
        one_minus = PolyExpr.affine([-1.0, 0.0], 1.0)
        prod = poly_product(one_plus, one_minus)
        assert prod.terms == {(0, 0): 1.0, (2, 0): -1.0}

    def test_quadratic_product_cross_terms(self):
        a = mono(2, x0=2) + mono(2, x1=1)
        b = mono(2, x0=1) + mono(2, x1=2)
        prod = poly_product(a, b)
        assert prod.terms[(3, 0)] == 1.0
        assert prod.terms[(2, 2)] == 1.0
        assert prod.terms[(1, 1)] == 1.0
        assert prod.terms[(0, 3)] == 1.0

    def test_degree_overflow(self):
        quartic = mono(2, x0=4)
        cubic = mono(2, x0=3)
        with pytest.raises(ValueError, match="degree"):
            poly_product(quartic, cubic)

    def test_shift_matches_direct_evaluation(self):
        rng = np.random.default_rng(9)
        p = PolyExpr(3, {(2, 1, 0): 1.3, (0, 0, 3): -0.4 + 1j, (1, 1, 1): 0.9})
        s = rng.standard_normal(3)
        y = rng.standard_normal(3)
        assert np.isclose(p.shifted(s)(y), p(y + s), rtol=1e-13)

    def test_squared_radius(self):
        assert squared_radius(2)(np.array([3.0, 4.0])) == 25.0

    def test_abs_square_of_char_prefactor_pointwise(self):
        # |P|^2 via poly algebra matches direct complex evaluation (SqTh+ prefactor)
        from gausspm.photon_ops import char_polynomial
        from gausspm.states import make_sqth_tuned

        ps = make_sqth_tuned(0.3, 0.7, +1)
        P = char_polynomial(ps)
        P2 = P * P.conjugate()
        rng = np.random.default_rng(2)
        for _ in range(8):
            xi = rng.standard_normal(2)
            assert np.isclose(P2(xi).real, abs(P(xi)) ** 2, rtol=1e-12)
            assert abs(P2(xi).imag) < 1e-12
