"""Construction and classification of zero-speed planar Lax shocks.

A shock family is parametrized by displacing the left state from a sonic
base state along the selected eigenvector and solving the jump conditions
for the right state at exactly speed zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .characteristics import metivier_genuine_nonlinearity, sorted_speeds
from .errors import ClassificationError, ContinuationError, MarginalShockError
from .systems import HyperbolicSystem

Array = np.ndarray

RH_TOL = 1e-12
NEWTON_TOL = 1e-13
NEWTON_MAX_ITER = 50
MARGINAL_SPEED_TOL = 1e-10


@dataclass
class ShockWave:
    """Piecewise-constant planar shock of speed zero in direction N.

    Builders (solve_zero_speed_shock, augment_shock) return validated
    instances: jump-condition residual below 1e-12 and Lax inequalities for
    family p.
    """

    system: HyperbolicSystem
    U_minus: Array
    U_plus: Array
    p: int
    epsilon: float
    speed: float = 0.0
    N: Array = field(default_factory=lambda: np.array([1.0, 0.0]))

    def validate(self) -> None:
        res = rh_residual(self.system, self.U_minus, self.U_plus,
                          self.speed, self.N)
        if np.linalg.norm(res) > RH_TOL:
            raise ContinuationError(
                f"jump-condition residual {np.linalg.norm(res):.3e} "
                f"exceeds {RH_TOL}")
        cls = lax_classify(self)
        if cls.p != self.p:
            raise ClassificationError(
                f"states satisfy the Lax inequalities for family "
                f"{cls.p}, not the requested {self.p}")


@dataclass
class ShockFamilyParams:
    """Inputs for the zero-speed shock family through a sonic base state."""

    system: HyperbolicSystem
    u_star: Array
    p: int
    epsilon: float
    N: Array = field(default_factory=lambda: np.array([1.0, 0.0]))

    def __post_init__(self) -> None:
        self.u_star = np.asarray(self.u_star, dtype=float)
        self.N = np.asarray(self.N, dtype=float)
        if self.epsilon <= 0.0:
            raise ValueError("shock amplitude epsilon must be positive")
        lam = sorted_speeds(self.system, self.u_star, self.N)[self.p - 1]
        if abs(lam) > MARGINAL_SPEED_TOL:
            raise ValueError(
                f"mode p={self.p} has speed {lam:.3e} at the base state; "
                f"a zero-speed family needs a sonic base state")


@dataclass
class LaxClassification:
    """Shock family index and signed characteristic-speed counts per side.

    Incoming modes carry information into the interface (positive speeds at
    the minus state, negative speeds at the plus state); outgoing modes
    leave it.
    """

    p: int
    n: int
    neg_minus: int
    pos_minus: int
    neg_plus: int
    pos_plus: int

    @property
    def incoming(self) -> int:
        return self.pos_minus + self.neg_plus

    @property
    def outgoing(self) -> int:
        return self.neg_minus + self.pos_plus


def rh_residual(system: HyperbolicSystem, U_minus: Array, U_plus: Array,
                speed: float, N: Array) -> Array:
    """Jump-condition residual speed*[U] - [F.N(U)], brackets = plus minus minus."""
    U_minus = np.asarray(U_minus, dtype=float)
    U_plus = np.asarray(U_plus, dtype=float)
    jump_U = U_plus - U_minus
    jump_F = system.flux_normal(U_plus, N) - system.flux_normal(U_minus, N)
    return speed * jump_U - jump_F


def solve_zero_speed_shock(params: ShockFamilyParams) -> ShockWave:
    """Construct the amplitude-epsilon member of the zero-speed p-shock family.

    The left state is u* + (epsilon/2)*r_p with the sign chosen so that
    lambda_p(U_minus, N) > 0; the right state solves F.N(U_plus) =
    F.N(U_minus) by damped Newton iteration from the first-order guess
    U_minus - epsilon*r_p. Roots closer to U_minus than epsilon/2 are
    rejected as the trivial branch.
    """
    system, N, p, eps = params.system, params.N, params.p, params.epsilon
    from .characteristics import char_fields

    gn = metivier_genuine_nonlinearity(system, params.u_star, N, p)
    if abs(gn) < 1e-8:
        raise ValueError(
            f"mode p={p} is not genuinely nonlinear at the base state "
            f"(coefficient {gn:.3e}); the family degenerates")
    r_p = char_fields(system, params.u_star, N)[p - 1].right_vec
    sign = 1.0 if gn > 0.0 else -1.0

    U_minus = params.u_star + sign * (eps / 2.0) * r_p
    if sorted_speeds(system, U_minus, N)[p - 1] <= 0.0:
        raise ContinuationError(
            "could not place the left state on the supersonic side of the "
            "sonic base state")

    target = system.flux_normal(U_minus, N)
    U = U_minus - sign * eps * r_p
    res = system.flux_normal(U, N) - target
    norm = np.linalg.norm(res)
    for _ in range(NEWTON_MAX_ITER):
        if norm <= NEWTON_TOL:
            break
        step = np.linalg.solve(system.jac_normal(U, N), -res)
        alpha = 1.0
        while alpha > 1e-6:
            U_try = U + alpha * step
            if system.admissible(U_try):
                res_try = system.flux_normal(U_try, N) - target
                if np.linalg.norm(res_try) < norm:
                    U, res, norm = U_try, res_try, np.linalg.norm(res_try)
                    break
            alpha /= 2.0
        else:
            raise ContinuationError(
                f"Newton line search stalled at residual {norm:.3e}")
    else:
        raise ContinuationError(
            f"Newton did not converge in {NEWTON_MAX_ITER} iterations "
            f"(residual {norm:.3e})")

    if np.linalg.norm(U - U_minus) < eps / 2.0:
        raise ContinuationError(
            "Newton collapsed onto the trivial root U_plus = U_minus")

    shock = ShockWave(system=system, U_minus=U_minus, U_plus=U,
                      p=p, epsilon=eps, N=N)
    shock.validate()
    return shock


def lax_classify(shock: ShockWave) -> LaxClassification:
    """Classify a shock by counting characteristic speeds on both sides.

    Returns the unique family p whose Lax inequalities hold at the shock
    speed. Speeds within 1e-10 of the shock speed raise MarginalShockError;
    no consistent family raises ClassificationError.
    """
    system, N, s = shock.system, shock.N, shock.speed
    lam_minus = sorted_speeds(system, shock.U_minus, N) - s
    lam_plus = sorted_speeds(system, shock.U_plus, N) - s
    for lam in (lam_minus, lam_plus):
        if np.min(np.abs(lam)) <= MARGINAL_SPEED_TOL:
            raise MarginalShockError(
                "a characteristic speed coincides with the shock speed; "
                "the discontinuity is marginal")

    n = system.n
    neg_minus = int(np.sum(lam_minus < 0.0))
    neg_plus = int(np.sum(lam_plus < 0.0))
    # Lax inequalities for family p: lambda_p > 0 at minus, < 0 at plus,
    # adjacent families outgoing on their respective sides.
    candidates = []
    for p in range(1, n + 1):
        if lam_minus[p - 1] <= 0.0 or lam_plus[p - 1] >= 0.0:
            continue
        if p > 1 and lam_minus[p - 2] >= 0.0:
            continue
        if p < n and lam_plus[p] <= 0.0:
            continue
        candidates.append(p)
    if len(candidates) != 1:
        raise ClassificationError(
            f"states are not a Lax shock of any single family "
            f"(candidates {candidates}; speeds minus {lam_minus + s}, "
            f"plus {lam_plus + s})")
    p = candidates[0]
    return LaxClassification(
        p=p, n=n,
        neg_minus=neg_minus, pos_minus=n - neg_minus,
        neg_plus=neg_plus, pos_plus=n - neg_plus,
    )
