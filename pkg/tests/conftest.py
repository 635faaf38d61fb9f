"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

import shockscan as ss

U_STAR = np.array([1.0, -1.0, 0.0])
N_STAR = np.array([1.0, 0.0])
WAVE_SPEED = 3.0


@pytest.fixture(scope="session")
def euler():
    return ss.euler_isentropic()


@pytest.fixture(scope="session")
def wave():
    return ss.linear_wave(WAVE_SPEED)


@pytest.fixture(scope="session")
def euler_shock(euler):
    """The amplitude-0.1 extreme shock used throughout."""
    params = ss.ShockFamilyParams(system=euler, u_star=U_STAR, p=3, epsilon=0.1)
    return ss.solve_zero_speed_shock(params)


@pytest.fixture(scope="session")
def coupled(euler):
    return ss.couple(euler, WAVE_SPEED, 0.0)


@pytest.fixture(scope="session")
def augmented_shock(euler_shock, coupled):
    return ss.augment_shock(euler_shock, coupled)


@pytest.fixture(scope="session")
def branch_points():
    return ss.predict_branch_points(WAVE_SPEED)


def hugoniot_oracle_shock(euler, eps: float) -> ss.ShockWave:
    """Closed-form zero-speed shock with densities 1 +- eps/2.

    For p(rho) = rho^2/2 the jump conditions at speed zero reduce to
    m1^2 = rho+ rho- (rho+ + rho-)/2 with m1 and u2 continuous; this builds
    the symmetric-density member directly, independent of the Newton path.
    """
    rho_m = 1.0 + eps / 2.0
    rho_p = 1.0 - eps / 2.0
    m1 = -np.sqrt(rho_p * rho_m * (rho_p + rho_m) / 2.0)
    return ss.ShockWave(
        system=euler,
        U_minus=np.array([rho_m, m1, 0.0]),
        U_plus=np.array([rho_p, m1, 0.0]),
        p=3,
        epsilon=eps,
    )


def euler_speeds_oracle(U: np.ndarray) -> np.ndarray:
    """Closed-form speeds u1 - c, u1, u1 + c for gamma=2, kappa=1/2."""
    rho, m1, _ = U
    u1 = m1 / rho
    c = np.sqrt(rho)
    return np.array([u1 - c, u1, u1 + c])


def random_boundary_point(rng) -> ss.FrequencyPoint:
    return ss.FrequencyPoint.from_theta(rng.uniform(0.0, 2.0 * np.pi))


def random_hemisphere_point(rng) -> ss.FrequencyPoint:
    x = rng.normal(size=3)
    x /= np.linalg.norm(x)
    return ss.FrequencyPoint(gamma=abs(x[0]), sigma=x[1], xi=x[2])


def assemble_delta_matrix(shock, point, stable_minus, unstable_plus):
    """Independent determinant assembly from given bases and the jump."""
    j = ss.jump_column(shock, point.tau, point.xi)
    j = j / np.linalg.norm(j)
    return np.hstack([stable_minus, j[:, None], unstable_plus])
