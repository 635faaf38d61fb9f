"""Zero-speed shock construction against the closed-form jump relations."""

import numpy as np
import pytest

import shockscan as ss

from conftest import N_STAR, U_STAR, euler_speeds_oracle, hugoniot_oracle_shock


def test_rh_residual_identical_states(euler):
    U = np.array([1.3, 0.4, -0.2])
    res = ss.rh_residual(euler, U, U, 0.7, N_STAR)
    np.testing.assert_allclose(res, 0.0, atol=0.0)


def test_rh_residual_printed_oracle_states(euler):
    # Densities 1.05/0.95 with the 8-digit momentum from the jump relation
    # m1^2 = rho+ rho- (rho+ + rho-)/2 = 0.9975.
    U_minus = np.array([1.05, -0.99874922, 0.0])
    U_plus = np.array([0.95, -0.99874922, 0.0])
    res = ss.rh_residual(euler, U_minus, U_plus, 0.0, N_STAR)
    assert np.linalg.norm(res) <= 1e-8


def test_rh_residual_exact_oracle_states(euler):
    shock = hugoniot_oracle_shock(euler, 0.1)
    res = ss.rh_residual(euler, shock.U_minus, shock.U_plus, 0.0, N_STAR)
    assert np.linalg.norm(res) <= 1e-12


def test_rh_residual_wave_block_trivial(wave):
    res = ss.rh_residual(wave, np.zeros(2), np.zeros(2), 0.0, N_STAR)
    np.testing.assert_allclose(res, 0.0, atol=0.0)


def test_newton_shock_at_default_amplitude(euler, euler_shock):
    shock = euler_shock
    rho_m, m1_m, _ = shock.U_minus
    rho_p, m1_p, m2_p = shock.U_plus
    # Left state is displaced along r_3 = (1,0,0) only.
    assert abs(rho_m - 1.05) <= 1e-12
    assert abs(m1_m + 1.0) <= 1e-12
    assert abs(rho_p - 0.95) <= 5e-3
    assert abs(m1_p + 1.0) <= 5e-3

    res = ss.rh_residual(euler, shock.U_minus, shock.U_plus, 0.0, N_STAR)
    assert np.linalg.norm(res) <= 1e-12

    lam_m = euler_speeds_oracle(shock.U_minus)[2]
    lam_p = euler_speeds_oracle(shock.U_plus)[2]
    assert lam_m > 0.0 > lam_p


@pytest.mark.parametrize("eps", [0.02, 0.05, 0.1])
def test_newton_matches_hugoniot_relation(euler, eps):
    params = ss.ShockFamilyParams(system=euler, u_star=U_STAR, p=3, epsilon=eps)
    shock = ss.solve_zero_speed_shock(params)
    rho_m, m1_m, m2_m = shock.U_minus
    rho_p, m1_p, m2_p = shock.U_plus
    assert abs(m1_p - m1_m) <= 1e-10
    assert abs(m1_p ** 2 - rho_p * rho_m * (rho_p + rho_m) / 2.0) <= 1e-10
    assert abs(m2_p / rho_p - m2_m / rho_m) <= 1e-10
    assert ss.lax_classify(shock).p == 3


def test_zero_amplitude_rejected(euler):
    with pytest.raises(ValueError):
        ss.ShockFamilyParams(system=euler, u_star=U_STAR, p=3, epsilon=0.0)


def test_non_sonic_base_state_rejected(euler):
    with pytest.raises(ValueError):
        ss.ShockFamilyParams(system=euler, u_star=np.array([1.0, -0.5, 0.0]),
                             p=3, epsilon=0.1)


def test_speed_sum_scales_quadratically(euler):
    def lam_sum(eps):
        shock = ss.solve_zero_speed_shock(ss.ShockFamilyParams(
            system=euler, u_star=U_STAR, p=3, epsilon=eps))
        return (euler_speeds_oracle(shock.U_minus)[2]
                + euler_speeds_oracle(shock.U_plus)[2])

    s1, s2 = lam_sum(0.02), lam_sum(0.01)
    assert abs(s1) <= 0.5 * 0.02 ** 2
    assert 2.5 <= abs(s1 / s2) <= 5.5  # halving eps quarters the defect


def test_amplitude_scaling(euler):
    def ratio(eps):
        shock = ss.solve_zero_speed_shock(ss.ShockFamilyParams(
            system=euler, u_star=U_STAR, p=3, epsilon=eps))
        return np.linalg.norm(shock.U_plus - shock.U_minus) / eps

    r1, r2 = ratio(0.04), ratio(0.02)
    assert abs(r1 - r2) <= 0.5 * 0.04
    assert 0.5 <= r2 <= 2.0


def test_lax_classify_base_shock(euler, euler_shock):
    cls = ss.lax_classify(euler_shock)
    assert (cls.p, cls.n) == (3, 3)
    assert (cls.neg_minus, cls.pos_minus) == (2, 1)
    assert (cls.neg_plus, cls.pos_plus) == (3, 0)
    speeds_m = ss.sorted_speeds(euler, euler_shock.U_minus, N_STAR)
    np.testing.assert_allclose(speeds_m,
                               euler_speeds_oracle(euler_shock.U_minus),
                               atol=1e-12)


def test_lax_classify_augmented_shock(augmented_shock):
    cls = ss.lax_classify(augmented_shock)
    assert (cls.p, cls.n) == (4, 5)
    # One extra incoming and one extra outgoing mode per side: the wave
    # speeds -3/+3 add a negative and a positive speed on each side.
    assert (cls.neg_minus, cls.pos_minus) == (3, 2)
    assert (cls.neg_plus, cls.pos_plus) == (4, 1)
    speeds = ss.sorted_speeds(augmented_shock.system,
                              augmented_shock.U_minus, N_STAR)
    assert abs(speeds[0] + 3.0) <= 1e-12 and abs(speeds[-1] - 3.0) <= 1e-12


def test_lax_classify_marginal(euler):
    degenerate = ss.ShockWave(system=euler, U_minus=U_STAR.copy(),
                              U_plus=U_STAR.copy(), p=3, epsilon=0.0)
    with pytest.raises(ss.MarginalShockError):
        ss.lax_classify(degenerate)


def test_lax_classify_rejects_expansion(euler, euler_shock):
    swapped = ss.ShockWave(system=euler, U_minus=euler_shock.U_plus,
                           U_plus=euler_shock.U_minus, p=3,
                           epsilon=euler_shock.epsilon)
    with pytest.raises(ss.ClassificationError):
        ss.lax_classify(swapped)
