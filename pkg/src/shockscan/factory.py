"""Coupled-system construction and closed-form wave-block oracles.

Couples a base system with a supersonic linear wave system into a
block-diagonal (optionally quadratically coupled) system, augments base
shocks with a zero wave component, predicts the four boundary frequencies
where the wave block's stable and unstable directions coalesce, and
provides closed-form eigenvalue/eigenvector oracles for that block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TuningError
from .lopatinski import FrequencyPoint, _fix_phases
from .shocks import ShockWave
from .systems import HyperbolicSystem, linear_wave

Array = np.ndarray

SUPERSONIC_MARGIN = 1e-10


@dataclass
class CoupledSystem(HyperbolicSystem):
    """Block system on (u, v): base fluxes on u, wave fluxes on v.

    With coupling_amplitude a = 0 the fluxes are exactly block-diagonal.
    For a != 0, terms quadratic in v are added to the u-components, so all
    Jacobians at v = 0 coincide with the block-diagonal ones.
    """

    base: HyperbolicSystem = None
    wave_speed: float = 0.0
    coupling_amplitude: float = 0.0

    @property
    def base_dim(self) -> int:
        return self.base.n


def supersonic_check(base: HyperbolicSystem, u_star: Array, s: float) -> bool:
    """True iff s strictly exceeds the spectral radius of DF1(u_star)."""
    radius = float(np.max(np.abs(np.linalg.eigvals(base.jac1(u_star)))))
    return s > radius + SUPERSONIC_MARGIN


def _quadratic_monomials(v: Array, nb: int, reverse: bool) -> Array:
    mono = np.array([v[0] * v[0], v[0] * v[1], v[1] * v[1]])
    if reverse:
        mono = mono[::-1]
    reps = -(-nb // 3)
    return np.tile(mono, reps)[:nb]


def _quadratic_gradients(v: Array, nb: int, reverse: bool) -> Array:
    grads = np.array([
        [2.0 * v[0], 0.0],
        [v[1], v[0]],
        [0.0, 2.0 * v[1]],
    ])
    if reverse:
        grads = grads[::-1]
    reps = -(-nb // 3)
    return np.tile(grads, (reps, 1))[:nb, :]


def couple(base: HyperbolicSystem, s: float,
           coupling_amplitude: float = 0.0) -> CoupledSystem:
    """Couple a base system with a linear wave system of speed s.

    The coupling adds a*(v1^2, v1*v2, v2^2, ...) to the u-components of the
    first flux and the reversed cycle to the second; both are O(|v|^2), so
    every Jacobian evaluated at v = 0 equals the block-diagonal one.
    """
    wave = linear_wave(s)
    nb = base.n
    a = float(coupling_amplitude)
    J1w = wave.jac1(np.zeros(2))
    J2w = wave.jac2(np.zeros(2))

    def flux1(U: Array) -> Array:
        u, v = U[:nb], U[nb:]
        fu = base.flux1(u) + a * _quadratic_monomials(v, nb, reverse=False)
        return np.concatenate([fu, J1w @ v])

    def flux2(U: Array) -> Array:
        u, v = U[:nb], U[nb:]
        fu = base.flux2(u) + a * _quadratic_monomials(v, nb, reverse=True)
        return np.concatenate([fu, J2w @ v])

    def jac1(U: Array) -> Array:
        u, v = U[:nb], U[nb:]
        J = np.zeros((nb + 2, nb + 2))
        J[:nb, :nb] = base.jac1(u)
        J[:nb, nb:] = a * _quadratic_gradients(v, nb, reverse=False)
        J[nb:, nb:] = J1w
        return J

    def jac2(U: Array) -> Array:
        u, v = U[:nb], U[nb:]
        J = np.zeros((nb + 2, nb + 2))
        J[:nb, :nb] = base.jac2(u)
        J[:nb, nb:] = a * _quadratic_gradients(v, nb, reverse=True)
        J[nb:, nb:] = J2w
        return J

    def domain(U: Array) -> bool:
        return base.admissible(U[:nb])

    return CoupledSystem(
        n=nb + 2,
        name=f"{base.name}+wave",
        flux1_fn=flux1,
        flux2_fn=flux2,
        jac1_fn=jac1,
        jac2_fn=jac2,
        domain_fn=domain,
        params={**base.params, "s": float(s), "coupling": a},
        base=base,
        wave_speed=float(s),
        coupling_amplitude=a,
    )


def augment_shock(base_shock: ShockWave, coupled: CoupledSystem) -> ShockWave:
    """Lift a base p-shock to the coupled system with zero wave component.

    The wave flux jump vanishes at v = 0, so the jump conditions carry over
    unchanged. The wave speeds -s, +s add one incoming and one outgoing
    mode on each side, making the lifted shock a Lax (p+1)-shock of the
    (n+2)-dimensional system. Raises TuningError when the wave speed is not
    supersonic relative to the base states.
    """
    base = coupled.base
    s = coupled.wave_speed
    for U in (base_shock.U_minus, base_shock.U_plus):
        if not supersonic_check(base, U, s):
            raise TuningError(
                f"wave speed s={s} does not dominate the base "
                f"characteristic speeds at {U}")
    zeros = np.zeros(2)
    shock = ShockWave(
        system=coupled,
        U_minus=np.concatenate([base_shock.U_minus, zeros]),
        U_plus=np.concatenate([base_shock.U_plus, zeros]),
        p=base_shock.p + 1,
        epsilon=base_shock.epsilon,
        N=base_shock.N.copy(),
    )
    shock.validate()
    return shock


@dataclass(frozen=True)
class BranchPointSet:
    """The four boundary frequencies with sigma^2 = s^2 * xi^2."""

    s: float
    points: tuple[FrequencyPoint, ...]

    @property
    def thetas(self) -> np.ndarray:
        return np.array([pt.theta for pt in self.points])

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)


def predict_branch_points(s: float) -> BranchPointSet:
    """Boundary points where the wave-block eigenvalues coalesce.

    The dispersion relation degenerates where sigma^2 = s^2 * xi^2 on
    sigma^2 + xi^2 = 1, i.e. at sigma = +-s/sqrt(1+s^2),
    xi = +-1/sqrt(1+s^2); all four sign combinations qualify. Points are
    ordered by increasing boundary angle.
    """
    if s <= 0.0:
        raise ValueError("wave speed s must be positive")
    root = 1.0 / np.sqrt(1.0 + s * s)
    pts = [FrequencyPoint(gamma=0.0, sigma=sgn_s * s * root, xi=sgn_x * root)
           for sgn_s in (+1.0, -1.0) for sgn_x in (+1.0, -1.0)]
    pts.sort(key=lambda pt: pt.theta)
    return BranchPointSet(s=float(s), points=tuple(pts))


@dataclass
class WaveBlockEigen:
    """Closed-form eigen data of the wave-block symbol b(tau, xi)."""

    mu_plus: complex
    mu_minus: complex
    vec_plus: Array
    vec_minus: Array
    defective: bool


def _unit(v: Array) -> Array:
    v = np.asarray(v, dtype=complex)
    return _fix_phases((v / np.linalg.norm(v))[:, None])[:, 0]


def b_eigen_oracle(tau: complex, xi: float, s: float) -> WaveBlockEigen:
    """Eigenvalues and eigenvectors of b(tau, xi) in closed form.

    b = (tau*I + i*xi*((0,s),(s,0))) * diag(s,-s)^{-1} has
    mu = +-sqrt(tau^2/s^2 + xi^2) (principal branch). On the boundary
    tau = i*sigma this reduces to mu^2 = xi^2 - sigma^2/s^2, the dispersion
    quadratic under mu = i*beta. The defect flag marks coalescence; the
    shared eigenvector is then the kernel direction of b.
    """
    if s <= 0.0:
        raise ValueError("wave speed s must be positive")
    tau = complex(tau)
    mu2 = (tau / s) ** 2 + xi * xi
    mu = complex(np.sqrt(complex(mu2)))
    scale = max(1.0, abs(tau) / s + abs(xi))
    if abs(2.0 * mu) <= 1e-7 * scale:
        vec = _unit(np.array([1j * xi, tau / s])) if abs(xi) > 0.0 \
            else np.array([1.0, 0.0], dtype=complex)
        return WaveBlockEigen(mu_plus=mu, mu_minus=-mu,
                              vec_plus=vec, vec_minus=vec, defective=True)
    if abs(xi) < 1e-300:
        # Diagonal b = diag(tau/s, -tau/s); match e1/e2 to the branches.
        if abs(tau / s - mu) <= abs(tau / s + mu):
            vp = np.array([1.0, 0.0], dtype=complex)
            vm = np.array([0.0, 1.0], dtype=complex)
        else:
            vp = np.array([0.0, 1.0], dtype=complex)
            vm = np.array([1.0, 0.0], dtype=complex)
        return WaveBlockEigen(mu_plus=mu, mu_minus=-mu,
                              vec_plus=vp, vec_minus=vm, defective=False)
    vec_plus = _unit(np.array([1j * xi, tau / s - mu]))
    vec_minus = _unit(np.array([1j * xi, tau / s + mu]))
    return WaveBlockEigen(mu_plus=mu, mu_minus=-mu,
                          vec_plus=vec_plus, vec_minus=vec_minus,
                          defective=False)


def boundary_wave_directions(
    sigma: float, xi: float, s: float,
) -> tuple[Array, Array, bool]:
    """Gamma -> 0+ limits of the wave block's stable/unstable directions.

    On the boundary mu^2 = xi^2 - sigma^2/s^2 is real. Real roots split by
    sign directly; imaginary roots are assigned by the drift
    d(mu)/d(gamma) = tau/(s^2 mu), which puts mu = -i*sign(sigma)*|beta| on
    the stable side. At coalescence both limits are the kernel direction.
    """
    if s <= 0.0:
        raise ValueError("wave speed s must be positive")
    if abs(xi) < 1e-300:
        # b = diag(i*sigma/s, -i*sigma/s): drifts 1/s and -1/s.
        return (np.array([0.0, 1.0], dtype=complex),
                np.array([1.0, 0.0], dtype=complex), False)
    mu2 = xi * xi - (sigma / s) ** 2
    scale = max(1.0, abs(sigma) / s + abs(xi))
    if abs(mu2) <= (1e-7 * scale) ** 2:
        vec = _unit(np.array([1j * xi, 1j * sigma / s]))
        return vec, vec, True
    if mu2 > 0.0:
        mu_u = np.sqrt(mu2)
    else:
        mu_u = 1j * np.sign(sigma) * np.sqrt(-mu2)
    mu_s = -mu_u
    r_minus = _unit(np.array([1j * xi, 1j * sigma / s - mu_s]))
    r_plus = _unit(np.array([1j * xi, 1j * sigma / s - mu_u]))
    return r_minus, r_plus, False


def coincidence_gap(sigma: float, xi: float, s: float) -> float:
    """|det| of the unit stable/unstable limit directions of the wave block.

    Equals 0 exactly where the two spaces coincide (the four predicted
    branch points) and 1 where they are orthogonal.
    """
    r = sigma * sigma + xi * xi
    if abs(r - 1.0) > 1e-9:
        raise ValueError("coincidence_gap expects a boundary point with "
                         "sigma^2 + xi^2 = 1")
    r_minus, r_plus, defective = boundary_wave_directions(sigma, xi, s)
    if defective:
        return 0.0
    return float(abs(np.linalg.det(np.column_stack([r_minus, r_plus]))))
