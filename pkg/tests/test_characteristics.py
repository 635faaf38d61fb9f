"""Characteristic fields, multiplicity sampling, and convexity checks."""

import numpy as np
import pytest

import shockscan as ss

from conftest import N_STAR, U_STAR, euler_speeds_oracle


def identity_flux_system(n: int = 2) -> ss.HyperbolicSystem:
    eye = np.eye(n)
    return ss.HyperbolicSystem(
        n=n, name="identity-flux",
        flux1_fn=lambda U: U.copy(), flux2_fn=lambda U: U.copy(),
        jac1_fn=lambda U: eye.copy(), jac2_fn=lambda U: eye.copy())


def test_euler_speeds_at_base_state(euler):
    fields = ss.char_fields(euler, U_STAR, N_STAR)
    speeds = [f.speed for f in fields]
    np.testing.assert_allclose(speeds, [-2.0, -1.0, 0.0], atol=1e-12)


def test_euler_zero_mode_eigenvector(euler):
    r3 = ss.char_fields(euler, U_STAR, N_STAR)[2].right_vec
    np.testing.assert_allclose(r3, [1.0, 0.0, 0.0], atol=1e-12)


def test_wave_speeds_tangential(wave):
    fields = ss.char_fields(wave, np.zeros(2), np.array([0.0, 1.0]))
    np.testing.assert_allclose([f.speed for f in fields], [-3.0, 3.0],
                               atol=1e-13)


def test_field_conventions(euler):
    rng = np.random.default_rng(17)
    for _ in range(20):
        U = np.array([rng.uniform(0.4, 2.5), rng.normal(), rng.normal()])
        phi = rng.uniform(0.0, 2.0 * np.pi)
        N = np.array([np.cos(phi), np.sin(phi)])
        M = ss.eval_symbol(euler, U, N)
        scale = max(1.0, np.max(np.abs(np.linalg.eigvals(M))))
        for f in ss.char_fields(euler, U, N):
            assert abs(np.linalg.norm(f.right_vec) - 1.0) <= 1e-12
            top = np.argmax(np.abs(f.right_vec))
            assert f.right_vec[top] > 0.0
            assert abs(f.left_vec @ f.right_vec - 1.0) <= 1e-10
            assert np.linalg.norm(M @ f.right_vec - f.speed * f.right_vec) \
                <= 1e-10 * scale
            assert np.linalg.norm(f.left_vec @ M - f.speed * f.left_vec) \
                <= 1e-10 * scale * np.linalg.norm(f.left_vec)


def test_speed_homogeneity(euler):
    rng = np.random.default_rng(23)
    for _ in range(50):
        U = np.array([rng.uniform(0.4, 2.5), rng.normal(), rng.normal()])
        nu = rng.normal(size=2)
        if np.linalg.norm(nu) < 0.1:
            continue
        c = rng.uniform(0.1, 10.0)
        s1 = ss.sorted_speeds(euler, U, c * nu)
        s0 = ss.sorted_speeds(euler, U, nu)
        assert np.max(np.abs(s1 - c * s0)) <= 1e-10 * max(1.0, np.max(np.abs(s1)))


def test_constant_multiplicity_patterns(euler, wave):
    ok, pattern = ss.check_constant_multiplicity(euler, U_STAR, 64)
    assert ok and pattern == (1, 1, 1)
    ok, pattern = ss.check_constant_multiplicity(wave, np.zeros(2), 64)
    assert ok and pattern == (1, 1)
    ok, pattern = ss.check_constant_multiplicity(
        identity_flux_system(2), np.zeros(2), 64)
    assert ok and pattern == (2,)


def test_constant_multiplicity_requires_enough_directions(euler):
    with pytest.raises(ValueError):
        ss.check_constant_multiplicity(euler, U_STAR, 4)


def fd_gradient_oracle(system, U, N, p, h=1e-6):
    """Plain first-order central differences, independent of the library's
    step policy, dotted with the kernel direction."""
    U = np.asarray(U, dtype=float)
    r = ss.char_fields(system, U, N)[p - 1].right_vec
    grad = np.zeros(U.size)
    for j in range(U.size):
        e = np.zeros(U.size)
        e[j] = h
        grad[j] = (ss.sorted_speeds(system, U + e, N)[p - 1]
                   - ss.sorted_speeds(system, U - e, N)[p - 1]) / (2 * h)
    return float(grad @ r)


def test_genuine_nonlinearity_base_state(euler):
    gn = ss.metivier_genuine_nonlinearity(euler, U_STAR, N_STAR, 3)
    # Closed form: grad lambda_3 = (-m1/rho^2 + 1/(2 sqrt(rho)), 1/rho, 0)
    # dotted with r_3 = (1,0,0) gives 3/2 at (1,-1,0).
    assert abs(gn - 1.5) <= 1e-6


def test_genuine_nonlinearity_second_sonic_state(euler):
    U = np.array([1.21, -1.331, 0.0])
    gn = ss.metivier_genuine_nonlinearity(euler, U, N_STAR, 3)
    assert abs(gn - 15.0 / 11.0) <= 1e-6
    assert gn > 0.0
    assert abs(gn - fd_gradient_oracle(euler, U, N_STAR, 3)) <= 1e-6


def test_genuine_nonlinearity_linear_system_vanishes(wave):
    for p in (1, 2):
        gn = ss.metivier_genuine_nonlinearity(wave, np.array([0.4, -0.2]),
                                              N_STAR, p)
        assert abs(gn) <= 1e-10


def test_genuine_nonlinearity_multiplicity_error():
    system = identity_flux_system(2)
    with pytest.raises(ss.MultiplicityError):
        ss.metivier_genuine_nonlinearity(system, np.zeros(2), N_STAR, 1)


def test_transverse_convexity_euler(euler):
    # Lambda(xi) = u1 + xi*u2 + c*sqrt(1+xi^2): second derivative c = 1.
    d2 = ss.metivier_transverse_convexity(euler, U_STAR, N_STAR, 3)
    assert abs(d2 - 1.0) <= 1e-6
    d2_minus = ss.metivier_transverse_convexity(euler, U_STAR, N_STAR, 1)
    assert abs(d2_minus + 1.0) <= 1e-6


def test_transverse_convexity_wave(wave):
    d2 = ss.metivier_transverse_convexity(wave, np.zeros(2), N_STAR, 2)
    assert abs(d2 - 3.0) <= 1e-6


def test_metivier_convexity_holds_at_fixture(euler):
    assert ss.metivier_genuine_nonlinearity(euler, U_STAR, N_STAR, 3) > 0.0
    assert ss.metivier_transverse_convexity(euler, U_STAR, N_STAR, 3) > 0.0
