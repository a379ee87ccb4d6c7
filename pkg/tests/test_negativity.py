"""Tests for Wigner negative volumes, region geometry, Bessel I0, QNG witness."""

import numpy as np
import pytest
from scipy.special import i0 as scipy_i0

from gausspm import (
    ConvergenceError,
    GaussianState,
    bessel_i0,
    make_photon_tuned,
    negative_region_sqth,
    negative_volume_asymptotic,
    negative_volume_asymptotic_smallq,
    negative_volume_even_odd,
    negative_volume_single_mode,
    negative_volume_two_mode_sqthp,
    qng_witness,
    wigner_pm,
)
from gausspm.classify import boundary_lines, classify_subtracted
from gausspm.qcs import qcs_closed_form_sqth, qcs_gaussian
from gausspm.states import make_coherent, make_sqth, make_sqth_tuned, make_thermal

FOCK1 = 2.0 / np.sqrt(np.e) - 1.0


class TestNegativeRegion:
    def test_sqv_plus_axes(self):
        for r in (0.3, 1.0, 2.0):
            region = negative_region_sqth(0.0, r, +1)
            assert region.kind == "ellipse"
            assert np.isclose(region.semi_axis_x, np.exp(-r) / np.sqrt(2), rtol=1e-13)
            assert np.isclose(region.semi_axis_p, np.exp(r) / np.sqrt(2), rtol=1e-13)

    def test_fock_node_circle(self):
        region = negative_region_sqth(0.0, 0.0, +1)
        # independent oracle: the Fock-1 Wigner (2s - 1)e^{-s}/pi vanishes at s = 1/2
        assert np.isclose(region.semi_axis_x, 1 / np.sqrt(2), rtol=1e-13)
        assert np.isclose(region.semi_axis_p, 1 / np.sqrt(2), rtol=1e-13)

    def test_subtraction_threshold(self):
        assert negative_region_sqth(0.5, 0.5, -1).kind == "empty"  # 0.5 > tanh^2(0.5)
        assert negative_region_sqth(0.1, 1.0, -1).kind == "ellipse"  # 0.1 < tanh^2(1.0)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            negative_region_sqth(-0.1, 0.5, +1)
        with pytest.raises(ValueError):
            negative_region_sqth(0.0, 0.0, -1)

    @pytest.mark.parametrize("sign", [+1, -1])
    def test_sign_structure_around_boundary(self, sign):
        q, r = (0.1, 0.8)
        region = negative_region_sqth(q, r, sign)
        assert region.kind == "ellipse"
        ps = make_sqth_tuned(q, r, sign)
        phis = np.linspace(0, 2 * np.pi, 24, endpoint=False)
        inside = 0.9 * np.stack(
            [region.semi_axis_x * np.cos(phis), region.semi_axis_p * np.sin(phis)], axis=-1
        )
        outside = 1.1 * np.stack(
            [region.semi_axis_x * np.cos(phis), region.semi_axis_p * np.sin(phis)], axis=-1
        )
        assert np.max(wigner_pm(ps, inside)) < 0.0
        assert np.min(wigner_pm(ps, outside)) > 0.0


def abs_wigner_integral(ps, n=1401):
    """Full-plane integral of |W| by trapezoid; N_W = (integral - 1)/2.

    The grid is scaled per axis to the state's own widths so the kink along
    the nodal line stays resolved even for strongly squeezed states.
    """
    st = ps.mother
    x = st.d[0] + 9.0 * np.sqrt(st.V[0, 0] / 2) * np.linspace(-1, 1, n)
    y = st.d[1] + 9.0 * np.sqrt(st.V[1, 1] / 2) * np.linspace(-1, 1, n)
    X, Y = np.meshgrid(x, y, indexing="ij")
    w = wigner_pm(ps, np.stack([X, Y], axis=-1))
    return np.trapezoid(np.trapezoid(np.abs(w), y, axis=1), x)


class TestSingleModeVolume:
    def test_fock(self):
        ps = make_photon_tuned(make_coherent([0.0]), +1, [1.0])
        rep = negative_volume_single_mode(ps)
        assert abs(rep.volume - FOCK1) < 1e-9
        assert rep.method == "ellipse-quadrature"

    def test_sqv_r_independent(self):
        for r in (0.5, 1.3, 2.0):
            for sign in (+1, -1):
                vol = negative_volume_single_mode(make_sqth_tuned(0.0, r, sign)).volume
                assert abs(vol - FOCK1) < 1e-9

    def test_thermal_subtraction_zero(self):
        rep = negative_volume_single_mode(make_sqth_tuned(0.3, 0.0, -1))
        assert rep.volume == 0.0

    def test_spot_values(self):
        # frozen from this package's quadrature, cross-checked against the
        # full-plane |W| identity below
        assert abs(
            negative_volume_single_mode(make_sqth_tuned(0.1, 0.5, +1)).volume - 0.1500444902
        ) < 1e-6
        assert abs(
            negative_volume_single_mode(make_sqth_tuned(0.1, 0.5, -1)).volume - 0.0340134274
        ) < 1e-6

    @pytest.mark.parametrize(
        "q,r,sign", [(0.1, 0.5, +1), (0.1, 0.5, -1), (0.0, 0.0, +1), (0.25, 1.2, -1)]
    )
    def test_full_plane_identity(self, q, r, sign):
        ps = make_sqth_tuned(q, r, sign)
        vol = negative_volume_single_mode(ps).volume
        assert abs(vol - 0.5 * (abs_wigner_integral(ps) - 1.0)) < 1e-5

    def test_displaced_mother(self):
        mother = GaussianState(make_sqth(0.2, 0.8).V, np.array([0.9, -0.4]))
        ps = make_photon_tuned(mother, +1, [1.0])
        vol = negative_volume_single_mode(ps).volume
        assert abs(vol - 0.5 * (abs_wigner_integral(ps) - 1.0)) < 1e-5

    def test_ordering_minus_below_plus(self):
        for q in np.linspace(0.0, 0.5, 5):
            for r in np.linspace(0.4, 2.0, 4):
                if q == 0.0 and r == 0.0:
                    continue
                vp = negative_volume_single_mode(make_sqth_tuned(q, r, +1)).volume
                vm = negative_volume_single_mode(make_sqth_tuned(q, r, -1)).volume
                assert vm <= vp + 1e-12, (q, r)

    def test_monotone_decreasing_in_q(self):
        for sign in (+1, -1):
            for r in (0.8, 1.5):
                vols = [
                    negative_volume_single_mode(make_sqth_tuned(q, r, sign)).volume
                    for q in (0.0, 0.1, 0.2, 0.35)
                ]
                assert np.all(np.diff(vols) <= 1e-12), (sign, r)

    def test_negativity_iff_strong_mother_qcs(self):
        # subtraction with v1 < 1: volume > 0 exactly when the mother C^2 > 1
        for q in (0.05, 0.15, 0.3):
            for r in (0.2, 0.35, 0.6, 1.0):
                st = make_sqth(q, r)
                flag = qcs_gaussian(st).qcs_squared > 1.0
                vol = negative_volume_single_mode(make_sqth_tuned(q, r, -1)).volume
                assert (vol > 1e-15) == flag, (q, r)

    def test_non_convergence_raises(self):
        ps = make_sqth_tuned(0.1, 0.5, +1)
        with pytest.raises(ConvergenceError):
            negative_volume_single_mode(ps, tol=1e-15, max_order=8)


class TestAsymptotic:
    def test_fock_limit(self):
        assert abs(negative_volume_asymptotic(0.0) - FOCK1) < 1e-12

    def test_smallq_within_five_percent(self):
        exact = negative_volume_asymptotic(0.1)
        approx = negative_volume_asymptotic_smallq(0.1)
        assert abs(approx - exact) / exact < 0.05

    @pytest.mark.parametrize("q", [0.1, 0.3])
    def test_large_r_volumes_approach_limit(self, q):
        limit = negative_volume_asymptotic(q)
        for sign in (+1, -1):
            vol = negative_volume_single_mode(make_sqth_tuned(q, 6.0, sign)).volume
            assert abs(vol - limit) < 1e-3, (q, sign)


class TestBesselI0:
    def test_against_scipy(self):
        x = np.concatenate([np.linspace(0, 29.9, 301), np.linspace(30.1, 120, 120)])
        assert np.max(np.abs(bessel_i0(x) - scipy_i0(x)) / scipy_i0(x)) < 1e-12

    def test_both_branches_accurate_at_switch(self):
        # I0 ~ e^x, so continuity across the switch is meaningful only against
        # a reference at the same argument
        for x in (29.999999, 30.000001):
            assert abs(bessel_i0(x) - scipy_i0(x)) / scipy_i0(x) < 1e-12

    def test_scalar_and_negative_argument(self):
        assert bessel_i0(0.0) == 1.0
        assert np.isclose(bessel_i0(-3.0), bessel_i0(3.0), rtol=1e-15)


class TestEvenOddVolume:
    def test_odd_constant(self):
        for alpha in (0.0, 1.0, 3.0):
            rep = negative_volume_even_odd(alpha, "odd")
            assert rep.volume == FOCK1 and rep.method == "radial-bessel"

    def test_even_at_zero_equals_odd(self):
        assert abs(negative_volume_even_odd(0.0, "even").volume - FOCK1) < 1e-12

    def test_even_monotone_decreasing(self):
        vols = [negative_volume_even_odd(a, "even").volume for a in (0.0, 0.5, 1.0, 1.5, 1.9)]
        assert np.all(np.diff(vols) < 0)

    def test_even_against_4d_qmc(self):
        # independent check of the radial-Bessel form through the generic
        # photon-addition machinery and Sobol integration
        from gausspm.negativity import _qmc_negative_volume
        from gausspm.states import TwoModeCoherentPlus, even_odd_state

        for alpha in (0.7, 1.9):
            radial = negative_volume_even_odd(alpha, "even").volume
            qmc_rep = _qmc_negative_volume(
                even_odd_state(TwoModeCoherentPlus(alpha, "even")),
                seed=11, tol=5e-4, min_log2=14, max_log2=17, replicates=8,
            )
            assert abs(qmc_rep.volume - radial) < max(4 * qmc_rep.error_estimate, 5e-4)

    def test_domain(self):
        with pytest.raises(ValueError):
            negative_volume_even_odd(-1.0, "even")
        with pytest.raises(ValueError):
            negative_volume_even_odd(1.0, "mixed")


class TestTwoModeVolume:
    def test_anchor_and_real_c_independence(self):
        ref = negative_volume_two_mode_sqthp(0.2, 0.5, [1.0, 0.0], seed=5)
        assert abs(ref.volume - 0.104) < 0.003
        assert ref.method == "monte-carlo"
        other = negative_volume_two_mode_sqthp(
            0.2, 0.5, np.array([1.0, 1.0]) / np.sqrt(2), seed=6
        )
        assert abs(other.volume - ref.volume) < 4 * (ref.error_estimate + other.error_estimate)

    def test_matches_single_mode_value(self):
        single = negative_volume_single_mode(make_sqth_tuned(0.2, 0.5, +1)).volume
        two = negative_volume_two_mode_sqthp(0.2, 0.5, [1.0, 0.0], seed=7)
        assert abs(two.volume - single) < 4 * max(two.error_estimate, 2.5e-4)

    def test_fock_times_vacuum(self):
        rep = negative_volume_two_mode_sqthp(0.0, 0.0, [1.0, 0.0], seed=8)
        assert abs(rep.volume - FOCK1) < 1e-3

    def test_deterministic_given_seed(self):
        a = negative_volume_two_mode_sqthp(0.2, 0.5, [1.0, 0.0], seed=42)
        b = negative_volume_two_mode_sqthp(0.2, 0.5, [1.0, 0.0], seed=42)
        assert a.volume == b.volume and a.error_estimate == b.error_estimate

    def test_tolerance_failure_raises(self):
        with pytest.raises(ConvergenceError):
            negative_volume_two_mode_sqthp(
                0.2, 0.5, [1.0, 0.0], seed=1, tol=1e-9, min_log2=8, max_log2=9
            )


class TestQngWitness:
    def test_classical_inconclusive(self):
        q = 0.2
        r = 0.5 * boundary_lines(q)["r_classical"]
        rep = qng_witness(make_sqth_tuned(q, r, -1))
        assert not rep.certified and rep.verdict == "inconclusive"

    def test_wigner_negative_state_certified(self):
        q = 0.1
        r = boundary_lines(q)["r_qcs_one"] + 0.3
        rep = qng_witness(make_sqth_tuned(q, r, -1))
        assert rep.certified and rep.w0 < rep.threshold

    def test_weak_strip_states_above_saturation_certified(self):
        # consistency with the region between the saturation curve and the
        # C^2 = 1 line; the saturation location itself is pinned in acceptance
        q = 0.1
        r = boundary_lines(q)["r_qcs_one"] - 1e-4
        rep = qng_witness(make_sqth_tuned(q, r, -1))
        assert rep.certified
        sub = classify_subtracted(make_sqth_tuned(q, r, -1))
        assert sub.wigner_negative is False  # certified while Wigner positive

    def test_preconditions(self):
        with pytest.raises(ValueError, match="centered"):
            qng_witness(make_photon_tuned(make_coherent([0.5]), +1, [1.0]))
        two_mode = make_photon_tuned(
            make_coherent([0.0, 0.0]), +1, np.array([1.0, 0.0])
        )
        with pytest.raises(ValueError, match="single-mode"):
            qng_witness(two_mode)
