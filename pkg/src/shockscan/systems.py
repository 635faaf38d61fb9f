"""Conservation-law systems in two space dimensions.

A system is a pair of flux maps F1, F2 on R^n together with their Jacobians.
Analytic Jacobians are used when supplied; otherwise central finite
differences of the fluxes are substituted. Built-in systems are registered
by name: "euler-isentropic" and "linear-wave".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError

Array = np.ndarray

# Truncation/round-off balance for first-derivative central differences.
FD_STEP = float(np.finfo(float).eps) ** (1.0 / 3.0)


def central_jacobian(f: Callable[[Array], Array], U: Array) -> Array:
    """Central finite-difference Jacobian of f at U, column by column."""
    U = np.asarray(U, dtype=float)
    n = U.size
    cols = []
    for j in range(n):
        h = FD_STEP * max(1.0, abs(U[j]))
        e = np.zeros(n)
        e[j] = h
        cols.append((np.asarray(f(U + e), dtype=float)
                     - np.asarray(f(U - e), dtype=float)) / (2.0 * h))
    return np.column_stack(cols)


@dataclass
class HyperbolicSystem:
    """First-order system u_t + F1(u)_x1 + F2(u)_x2 = 0.

    Parameters
    ----------
    n : int
        State dimension (>= 2).
    name : str
        Identifier used in reports.
    flux1_fn, flux2_fn : callable
        Maps from a state vector to an n-vector.
    jac1_fn, jac2_fn : callable or None
        Analytic Jacobians; finite differences are used when None.
    domain_fn : callable or None
        Admissibility predicate (e.g. positive density). None means all
        states are admissible.
    params : dict
        System parameters, kept for serialization.
    """

    n: int
    name: str
    flux1_fn: Callable[[Array], Array]
    flux2_fn: Callable[[Array], Array]
    jac1_fn: Optional[Callable[[Array], Array]] = None
    jac2_fn: Optional[Callable[[Array], Array]] = None
    domain_fn: Optional[Callable[[Array], bool]] = None
    params: dict = field(default_factory=dict)

    def _check_state(self, U: Array) -> Array:
        U = np.asarray(U, dtype=float)
        if U.shape != (self.n,):
            raise ValueError(
                f"state must be a vector of length {self.n}, got shape {U.shape}")
        if self.domain_fn is not None and not bool(self.domain_fn(U)):
            raise DomainError(f"state {U} is outside the domain of {self.name}")
        return U

    def admissible(self, U: Array) -> bool:
        U = np.asarray(U, dtype=float)
        if U.shape != (self.n,):
            return False
        return self.domain_fn is None or bool(self.domain_fn(U))

    def flux1(self, U: Array) -> Array:
        return np.asarray(self.flux1_fn(self._check_state(U)), dtype=float)

    def flux2(self, U: Array) -> Array:
        return np.asarray(self.flux2_fn(self._check_state(U)), dtype=float)

    def jac1(self, U: Array) -> Array:
        U = self._check_state(U)
        if self.jac1_fn is not None:
            return np.asarray(self.jac1_fn(U), dtype=float)
        return central_jacobian(self.flux1_fn, U)

    def jac2(self, U: Array) -> Array:
        U = self._check_state(U)
        if self.jac2_fn is not None:
            return np.asarray(self.jac2_fn(U), dtype=float)
        return central_jacobian(self.flux2_fn, U)

    def flux_normal(self, U: Array, N: Array) -> Array:
        """Directional flux N1*F1(U) + N2*F2(U)."""
        N = np.asarray(N, dtype=float)
        return N[0] * self.flux1(U) + N[1] * self.flux2(U)

    def jac_normal(self, U: Array, N: Array) -> Array:
        """Directional Jacobian N1*DF1(U) + N2*DF2(U)."""
        N = np.asarray(N, dtype=float)
        return N[0] * self.jac1(U) + N[1] * self.jac2(U)


def euler_isentropic(gamma: float = 2.0, kappa: float = 0.5) -> HyperbolicSystem:
    """2-D isentropic Euler equations in conserved variables (rho, m1, m2).

    Pressure law p(rho) = kappa * rho**gamma, sound speed
    c = sqrt(kappa*gamma*rho**(gamma-1)). The defaults give p = rho^2/2 and
    c = sqrt(rho).
    """
    gamma = float(gamma)
    kappa = float(kappa)
    if gamma <= 1.0 or kappa <= 0.0:
        raise ValueError("require gamma > 1 and kappa > 0")

    def pressure(rho: float) -> float:
        return kappa * rho ** gamma

    def dpressure(rho: float) -> float:
        return kappa * gamma * rho ** (gamma - 1.0)

    def flux1(U: Array) -> Array:
        rho, m1, m2 = U
        return np.array([m1, m1 * m1 / rho + pressure(rho), m1 * m2 / rho])

    def flux2(U: Array) -> Array:
        rho, m1, m2 = U
        return np.array([m2, m1 * m2 / rho, m2 * m2 / rho + pressure(rho)])

    def jac1(U: Array) -> Array:
        rho, m1, m2 = U
        return np.array([
            [0.0, 1.0, 0.0],
            [-(m1 / rho) ** 2 + dpressure(rho), 2.0 * m1 / rho, 0.0],
            [-m1 * m2 / rho ** 2, m2 / rho, m1 / rho],
        ])

    def jac2(U: Array) -> Array:
        rho, m1, m2 = U
        return np.array([
            [0.0, 0.0, 1.0],
            [-m1 * m2 / rho ** 2, m2 / rho, m1 / rho],
            [-(m2 / rho) ** 2 + dpressure(rho), 0.0, 2.0 * m2 / rho],
        ])

    return HyperbolicSystem(
        n=3,
        name="euler-isentropic",
        flux1_fn=flux1,
        flux2_fn=flux2,
        jac1_fn=jac1,
        jac2_fn=jac2,
        domain_fn=lambda U: U[0] > 0.0,
        params={"gamma": gamma, "kappa": kappa},
    )


def linear_wave(s: float) -> HyperbolicSystem:
    """Linear wave system with constant Jacobians diag(s,-s) and ((0,s),(s,0)).

    Characteristic speeds in any unit direction are -s and +s.
    """
    s = float(s)
    if s <= 0.0:
        raise ValueError("wave speed s must be positive")
    J1 = np.array([[s, 0.0], [0.0, -s]])
    J2 = np.array([[0.0, s], [s, 0.0]])
    return HyperbolicSystem(
        n=2,
        name="linear-wave",
        flux1_fn=lambda V: J1 @ V,
        flux2_fn=lambda V: J2 @ V,
        jac1_fn=lambda V: J1.copy(),
        jac2_fn=lambda V: J2.copy(),
        domain_fn=None,
        params={"s": s},
    )


SYSTEM_REGISTRY: dict[str, Callable[..., HyperbolicSystem]] = {
    "euler-isentropic": euler_isentropic,
    "linear-wave": linear_wave,
}


def make_system(name: str, **params) -> HyperbolicSystem:
    """Instantiate a built-in system by registry name."""
    try:
        factory = SYSTEM_REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(SYSTEM_REGISTRY))
        raise KeyError(f"unknown system {name!r}; known systems: {known}") from None
    return factory(**params)
