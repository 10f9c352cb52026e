import numpy as np
import pytest

from qtransistor import (
    DegenerateControlError,
    ParameterError,
    amplification_factor,
    analytic_eigensystem,
    closed_form_discrepancy,
    closed_form_populations,
    heat_currents,
    heat_currents_trace,
    optimize_lambda,
    steady_state,
)

from conftest import random_params

# closed-form populations frozen from an independent transcription of the
# printed determinant expansion (bordered Cramer over the active states),
# evaluated at two fully-common-coupling operating points
FROZEN_CLOSED_FORM = {
    # omega_L=30, omega_M=1, g=0.3, T=(5,1,0.5), gamma=0.002, rho44=0
    "dark_fig7": np.array([
        7.29740058007315451e-01, 2.68206186294309756e-01, 1.58461103172798036e-03,
        0.0, 3.37075922371546702e-04, 1.32068744275275820e-04, 0.0, 0.0,
    ]),
    # omega_L=12, omega_M=1.5, g=0.6, T=(4,2,0.8), gamma=(3e-3,1e-3,2e-3), rho44=0.25
    "dark_alt": np.array([
        4.93310753563245719e-01, 2.24817302863830476e-01, 2.30077627784138414e-02,
        2.50000000000000000e-01, 5.87472068025180101e-03, 2.98946011425799824e-03,
        0.0, 0.0,
    ]),
}


class TestHeatCurrents:
    def test_equilibrium_currents_vanish(self, fig2_params):
        params = fig2_params.replace(T_L=1.7, T_M=1.7, T_R=1.7)
        q = heat_currents(params, steady_state(params))
        assert abs(q.Q_L) < 1e-12 and abs(q.Q_M) < 1e-12 and abs(q.Q_R) < 1e-12

    def test_fig2_regime_signs(self, fig2_params):
        for T_M in (0.2, 1.0, 2.0, 3.0):
            params = fig2_params.replace(T_M=T_M)
            q = heat_currents(params, steady_state(params))
            assert q.Q_L > 0 and q.Q_R < 0
            assert abs(q.Q_M) < 0.1 * abs(q.Q_L)
            assert q.is_steady

    def test_conservation_random_draws(self):
        rng = np.random.default_rng(31)
        for _ in range(60):
            params = random_params(rng)
            q = heat_currents(params, steady_state(params))
            assert abs(q.total) < 1e-10 * max(abs(q.Q_L), abs(q.Q_M), abs(q.Q_R))

    def test_dark_currents_halve_with_rho44(self, dark_params):
        q0 = heat_currents(dark_params, steady_state(dark_params, rho44_init=0.0))
        q5 = heat_currents(dark_params, steady_state(dark_params, rho44_init=0.5))
        np.testing.assert_allclose(q5.as_array(), 0.5 * q0.as_array(), rtol=1e-12)

    def test_trace_form_agreement(self):
        rng = np.random.default_rng(41)
        for _ in range(15):
            params = random_params(rng)
            p = steady_state(params)
            a = heat_currents(params, p).as_array()
            b = heat_currents_trace(params, p).as_array()
            np.testing.assert_allclose(a, b, rtol=1e-10, atol=1e-22)

    def test_transient_state_flagged(self, fig2_params):
        q = heat_currents(fig2_params, np.eye(8)[0])
        assert not q.is_steady
        assert q.steady_residual > 1e-8


class TestAmplification:
    def test_fig2_magnitude_and_sum(self, fig2_params):
        res = amplification_factor(fig2_params)
        assert 20.0 < abs(res.alpha_L) < 45.0
        assert 20.0 < abs(res.alpha_R) < 45.0
        assert res.alpha_L + res.alpha_R == pytest.approx(-1.0, abs=1e-6)

    def test_alpha_sum_random_draws(self):
        rng = np.random.default_rng(57)
        checked = 0
        for _ in range(12):
            params = random_params(rng)
            try:
                res = amplification_factor(params)
            except DegenerateControlError:
                continue
            assert res.alpha_L + res.alpha_R == pytest.approx(-1.0, abs=1e-6)
            checked += 1
        assert checked >= 8

    def test_dark_state_invariance(self, dark_params):
        values = [amplification_factor(dark_params, rho44_init=r).alpha_L
                  for r in (0.0, 0.3, 0.6, 0.9)]
        assert max(values) - min(values) < 1e-8

    def test_convergence_estimate_bounds_refinement(self, fig2_params):
        coarse = amplification_factor(fig2_params, dT=2e-3)
        fine = amplification_factor(fig2_params, dT=1e-3)
        change = abs(fine.alpha_L - coarse.alpha_L)
        assert change < 10.0 * max(coarse.convergence_estimate, 1e-15)

    def test_degenerate_control_raises(self, fig2_params):
        # a control bath too cold to exchange photons at its channel
        # frequencies leaves Q_M insensitive to T_M: the occupation
        # underflows to zero on both sides of the central difference
        frozen = fig2_params.replace(T_M=0.005)
        with pytest.raises(DegenerateControlError):
            amplification_factor(frozen, control="M")

    def test_control_sign_change_region(self, fig2_params):
        # dQ_M/dT_R changes sign across T_R in the right-control regime;
        # alpha flips with it, and close to the crossing the convergence
        # estimate blows up, flagging the result as unresolved
        base = fig2_params.replace(g=0.7, lambda1=0.9, lambda2=0.1,
                                   lambda3=0.1, T_L=1.6, T_M=7.0)
        near = amplification_factor(base.replace(T_R=1.0), control="R")
        far = amplification_factor(base.replace(T_R=2.0), control="R")
        assert np.sign(near.alpha_L) != np.sign(far.alpha_L)
        assert near.convergence_estimate > abs(near.alpha_L)
        assert far.convergence_estimate < 1e-3 * abs(far.alpha_L)
        # truncation still visible this close to the crossing
        assert far.alpha_L + far.alpha_R == pytest.approx(-1.0, abs=1e-4)

    def test_control_validation(self, fig2_params):
        with pytest.raises(ParameterError):
            amplification_factor(fig2_params, control="X")
        with pytest.raises(ParameterError):
            amplification_factor(fig2_params, dT=10.0)

    def test_temperature_trend_without_common_coupling(self, fig2_params):
        # independent reservoirs: amplification falls as the control bath warms
        base = fig2_params.replace(g=0.7, lambda1=0.0, lambda2=0.0, lambda3=0.0)
        values = [amplification_factor(base.replace(T_M=T)).alpha_L
                  for T in (0.5, 1.0, 2.0, 3.0)]
        assert all(b < a for a, b in zip(values, values[1:])), values

    def test_temperature_trend_fully_common(self, dark_params):
        # completely correlated transitions reverse the trend at higher T_M
        # (after a suppression dip at low temperature)
        values = [
            amplification_factor(dark_params.replace(T_M=T), rho44_init=0.0).alpha_L
            for T in (1.0, 2.0, 3.0)
        ]
        assert values[0] < values[1] < values[2], values


class TestClosedForm:
    def test_frozen_fig7_point(self, dark_params):
        p = closed_form_populations(dark_params, 0.0)
        np.testing.assert_allclose(p, FROZEN_CLOSED_FORM["dark_fig7"],
                                   rtol=1e-10, atol=1e-15)

    def test_frozen_second_point(self):
        params = dark_alt_params()
        p = closed_form_populations(params, 0.25)
        np.testing.assert_allclose(p, FROZEN_CLOSED_FORM["dark_alt"],
                                   rtol=1e-10, atol=1e-15)

    def test_rho44_one_empties_active_states(self, dark_params):
        p = closed_form_populations(dark_params, 1.0)
        np.testing.assert_allclose(p, np.eye(8)[3], atol=1e-15)

    def test_linear_in_active_weight(self, dark_params):
        p0 = closed_form_populations(dark_params, 0.0)
        p5 = closed_form_populations(dark_params, 0.5)
        active = [0, 1, 2, 4, 5]
        np.testing.assert_allclose(p5[active], 0.5 * p0[active], rtol=1e-13)

    def test_matches_full_solver_within_validity(self, dark_params):
        diff, neglected = closed_form_discrepancy(dark_params, 0.0)
        assert diff < 1e-4
        assert diff <= neglected

    def test_warns_outside_validity_regime(self, dark_params):
        # hot baths populate the neglected top doublet; still returns numbers
        hot = dark_params.replace(omega_L=5.0, T_L=3.0, T_M=3.0, T_R=2.5)
        with pytest.warns(UserWarning, match="validity"):
            diff, neglected = closed_form_discrepancy(hot, 0.0)
        assert neglected > 1e-3
        assert diff > 0.0

    def test_requires_fully_common(self, fig2_params):
        with pytest.raises(ParameterError):
            closed_form_populations(fig2_params, 0.0)

    def test_rejects_bad_rho44(self, dark_params):
        with pytest.raises(ParameterError):
            closed_form_populations(dark_params, -0.1)


def dark_alt_params():
    from qtransistor import SystemParams

    return SystemParams(
        omega_L=12.0, omega_M=1.5, g=0.6,
        T_L=4.0, T_M=2.0, T_R=0.8,
        gamma_L=3e-3, gamma_M=1e-3, gamma_R=2e-3,
        lambda1=1.0, lambda2=1.0, lambda3=1.0,
    )


class TestOptimizeLambda:
    def test_single_point_matches_direct_call(self, fig2_params):
        scan = optimize_lambda(fig2_params, free=("lambda1",), resolution=1)
        direct = amplification_factor(fig2_params)
        assert scan.alpha_L[0] == pytest.approx(direct.alpha_L, rel=1e-12)

    def test_fig4_axis_trends(self, fig2_params):
        base = fig2_params.replace(g=0.3, T_M=3.0,
                                   lambda1=0.3, lambda2=0.3, lambda3=0.3)
        up = optimize_lambda(base, free=("lambda1",), resolution=5)
        assert up.monotonicity["lambda1"] == "increasing"
        assert up.argmax == (1.0,)
        down = optimize_lambda(base, free=("lambda3",), resolution=5)
        assert down.monotonicity["lambda3"] == "decreasing"
        assert down.argmax == (0.0,)

    def test_two_axis_scan_shape(self, fig2_params):
        base = fig2_params.replace(g=0.3, T_M=3.0, lambda2=0.3)
        scan = optimize_lambda(base, free=("lambda1", "lambda3"), resolution=3)
        assert scan.alpha_L.shape == (3, 3)
        assert scan.n_failed == 0
        assert scan.max_alpha_L == np.nanmax(scan.alpha_L)

    def test_rejects_bad_axis(self, fig2_params):
        with pytest.raises(ParameterError):
            optimize_lambda(fig2_params, free=("T_M",))

    def test_scan_through_dark_corner(self, dark_params):
        # the lambda1 = 1 endpoint needs the dark-state pin, the interior
        # points must not receive it; no grid point may fail
        scan = optimize_lambda(dark_params, free=("lambda1",), resolution=3,
                               rho44_init=0.0)
        assert scan.n_failed == 0
        assert np.all(np.isfinite(scan.alpha_L))
