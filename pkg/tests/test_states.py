"""Tests for the named state families and their scalars."""

import numpy as np
import pytest

from gausspm import (
    GaussianState,
    TwoModeCoherentPlus,
    char_pm,
    even_odd_scalars,
    even_odd_state,
    gaussian_char,
    make_photon_tuned,
    mean_photon_number,
    purity,
    qcs_photon_tuned,
    qcs_pure_total_noise,
    two_mode_sqthp_qcs,
)
from gausspm.qcs import qcs_closed_form_sqth, qcs_gaussian
from gausspm.states import (
    SqThParams,
    make_coherent,
    make_sqth,
    make_sqth_tuned,
    make_thermal,
    make_two_mode_sqth,
    product,
    random_gaussian_state,
    sqth_minus_mean_photon,
)


class TestMakeSqTh:
    def test_vacuum_limit(self):
        st = make_sqth(0.0, 0.0)
        assert np.allclose(st.V, np.eye(2)) and np.allclose(st.d, 0)

    def test_thermal(self):
        q = 0.3
        st = make_thermal(q)
        assert np.allclose(st.V, (1 + q) / (1 - q) * np.eye(2))

    def test_determinant(self):
        assert np.isclose(make_sqth(0.5, 1.0).det_v, 9.0, rtol=1e-12)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            make_sqth(1.0, 0.5)
        with pytest.raises(ValueError):
            make_sqth(0.5, -0.1)
        with pytest.raises(ValueError):
            SqThParams(0.2, 0.3, phi=0.4)


class TestMakeCoherent:
    def test_vacuum(self):
        st = make_coherent([0.0])
        assert np.allclose(st.V, np.eye(2)) and np.allclose(st.d, 0)

    def test_mean_photon(self):
        z = np.array([0.8 - 0.2j, 1.1j])
        assert np.isclose(mean_photon_number(make_coherent(z)), np.sum(np.abs(z) ** 2))

    def test_subtraction_fixed_point_pointwise(self):
        z0 = 0.9 + 0.5j
        st = make_coherent([z0])
        ps = make_photon_tuned(st, -1, [1.0])
        for z in (0.2, -0.7 + 0.3j, 1.4j):
            assert np.isclose(char_pm(ps, z), gaussian_char(st, z), rtol=1e-12)


class TestProduct:
    def test_dimensions_and_blocks(self):
        st = product(make_sqth(0.2, 0.5), make_coherent([1.0]))
        assert st.n == 2
        assert np.allclose(st.V[:2, :2], make_sqth(0.2, 0.5).V)
        assert np.allclose(st.V[2:, 2:], np.eye(2))
        assert np.allclose(st.d, [0, 0, np.sqrt(2), 0])

    def test_two_mode_sqth(self):
        st = make_two_mode_sqth(0.3, 0.8)
        assert st.n == 2 and np.isclose(purity(st), ((1 - 0.3) / (1 + 0.3)) ** 2)


class TestSqvIdentity:
    def test_pointwise_char_equality(self):
        plus = make_sqth_tuned(0.0, 1.0, +1)
        minus = make_sqth_tuned(0.0, 1.0, -1)
        rng = np.random.default_rng(83)
        z = rng.standard_normal((40, 1)) + 1j * rng.standard_normal((40, 1))
        assert np.max(np.abs(char_pm(plus, z) - char_pm(minus, z))) < 1e-12


class TestEvenOdd:
    def test_odd_scalars_alpha_independent(self):
        for alpha in (0.0, 1.0, 3.0, 1.5 + 0.5j):
            sc = even_odd_scalars(TwoModeCoherentPlus(alpha, "odd"))
            assert np.isclose(sc.qcs_squared, 2.0, atol=1e-10)
            assert sc.npt == 1.0
            assert np.isclose(sc.eof, np.log(2.0), atol=1e-10)

    def test_even_scalars_formulas(self):
        for alpha in (0.0, 0.7, 1.9):
            sc = even_odd_scalars(TwoModeCoherentPlus(alpha, "even"))
            want_qcs = 1.0 + 1.0 / (1.0 + 2.0 * alpha**2) ** 2
            assert np.isclose(sc.qcs_squared, want_qcs, atol=1e-10)
            assert np.isclose(sc.npt, 1.0 / (1.0 + alpha**2), rtol=1e-14)

    def test_even_limits(self):
        at_zero = even_odd_scalars(TwoModeCoherentPlus(0.0, "even"))
        assert np.isclose(at_zero.qcs_squared, 2.0, atol=1e-10)
        assert np.isclose(at_zero.eof, np.log(2.0), atol=1e-10)
        far = even_odd_scalars(TwoModeCoherentPlus(6.0, "even"))
        assert far.qcs_squared < 1.001
        assert far.eof < 0.02

    def test_eof_monotone_decreasing_even(self):
        vals = [even_odd_scalars(TwoModeCoherentPlus(a, "even")).eof for a in (0.0, 0.5, 1.0, 2.0)]
        assert np.all(np.diff(vals) < 0)

    def test_total_noise_matches_moment_engine(self):
        for parity in ("even", "odd"):
            for alpha in (0.0, 0.7, 1.9):
                ps = even_odd_state(TwoModeCoherentPlus(alpha, parity))
                a = qcs_pure_total_noise(ps).qcs_squared
                b = qcs_photon_tuned(ps).qcs_squared
                assert np.isclose(a, b, atol=1e-8), (parity, alpha)

    def test_parity_validation(self):
        with pytest.raises(ValueError):
            TwoModeCoherentPlus(1.0, "mixed")


class TestTwoModeSqThPlusQcs:
    def test_anchor_and_half_sum_identity(self):
        got = two_mode_sqthp_qcs(0.2, 0.5, [1.0, 0.0])
        assert abs(got - 1.54) < 0.01
        half = 0.5 * (
            qcs_gaussian(make_sqth(0.2, 0.5)).qcs_squared + qcs_closed_form_sqth(0.2, 0.5, +1)
        )
        assert np.isclose(got, half, atol=1e-8)

    def test_real_mode_vectors_agree(self):
        ref = two_mode_sqthp_qcs(0.2, 0.5, [1.0, 0.0])
        for c in ([0.0, 1.0], np.array([1.0, 1.0]) / np.sqrt(2), [0.3, np.sqrt(1 - 0.09)],
                  np.array([1.0, -1.0]) / np.sqrt(2)):
            assert np.isclose(two_mode_sqthp_qcs(0.2, 0.5, c), ref, atol=1e-8)

    def test_vacuum_fock_average(self):
        assert np.isclose(two_mode_sqthp_qcs(0.0, 0.0, [1.0, 0.0]), 2.0, atol=1e-10)

    def test_complex_mode_vector_computes_without_assert(self):
        # phase mixing is not a symmetry of the product mother; the value is
        # allowed to differ and the c-independence assertion must not fire
        got = two_mode_sqthp_qcs(0.2, 0.5, np.array([1.0, 1.0j]) / np.sqrt(2))
        assert np.isfinite(got)
        assert abs(got - two_mode_sqthp_qcs(0.2, 0.5, [1.0, 0.0])) > 1e-3


class TestSqThMinusMeanPhoton:
    def test_against_moment_engine(self):
        from gausspm import mean_photon_pm

        for q, r in ((0.15, 0.3), (0.4, 0.9), (0.7, 2.0)):
            assert np.isclose(
                sqth_minus_mean_photon(q, r),
                mean_photon_pm(make_sqth_tuned(q, r, -1)),
                rtol=1e-10,
            )


class TestRandomGaussianState:
    def test_valid_and_reproducible(self):
        rng = np.random.default_rng(5)
        a = random_gaussian_state(2, rng)
        rng = np.random.default_rng(5)
        b = random_gaussian_state(2, rng)
        assert np.allclose(a.V, b.V) and np.allclose(a.d, b.d)
        assert isinstance(a, GaussianState)
