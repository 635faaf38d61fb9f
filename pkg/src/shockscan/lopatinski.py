"""Lopatinski determinant engine.

Computes the one-sided symbol matrix A(tau, xi), its stable/unstable
invariant subspaces for Re tau > 0 (ordered Schur split), their continuous
extensions to the neutral boundary Re tau = 0 (spectral classification of
neutral modes by first-order drift, with coalesced limits at
glancing/branch points), and the normalized determinant that tests linear
independence of the decaying modes against the jump direction.

Zeros are detected through delta_norm, the determinant modulus taken with
per-subspace orthonormal bases and a unit jump column; this quantity is
invariant under block-wise basis changes, so no globally continuous basis
bookkeeping is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import (
    CharacteristicBoundaryError,
    DegenerateShockError,
    StructuralError,
)
from .shocks import ShockWave
from .systems import HyperbolicSystem

Array = np.ndarray

# Interior evaluations require Re tau at or above this floor.
INTERIOR_MIN_GAMMA = 1e-8
# Decreasing offsets used for the boundary-limit convergence diagnostic.
ETA_SEQUENCE = (1e-3, 1e-4, 1e-5, 1e-6)
FLAG_DISTANCE_TOL = 1e-7
# Condition-number ceiling for the normal flux Jacobian.
JAC1_MAX_COND = 1e10
# |Re mu| below this (relative) counts as neutral on the boundary.
NEUTRAL_AXIS_TOL = 1e-9
# Neutral eigenvalues closer than this (relative) form one cluster.
CLUSTER_TOL = 1e-7
# Tangential frequencies below this take the exact xi=0 limit rule.
XI_ZERO_TOL = 1e-14
# Relative floor under which the jump column counts as vanished.
JUMP_DEGENERATE_TOL = 1e-13


@dataclass(frozen=True)
class FrequencyPoint:
    """Point (tau = gamma + i*sigma, xi) of the unit frequency hemisphere."""

    gamma: float
    sigma: float
    xi: float

    def __post_init__(self) -> None:
        if self.gamma < 0.0:
            raise ValueError("gamma = Re tau must be nonnegative")
        r = self.gamma ** 2 + self.sigma ** 2 + self.xi ** 2
        if abs(r - 1.0) > 1e-12:
            raise ValueError(
                f"point must satisfy gamma^2+sigma^2+xi^2 = 1, got {r!r}")

    @property
    def tau(self) -> complex:
        return complex(self.gamma, self.sigma)

    @property
    def theta(self) -> float:
        """Boundary angle with sigma = cos(theta), xi = sin(theta)."""
        return float(np.arctan2(self.xi, self.sigma) % (2.0 * np.pi))

    @classmethod
    def from_theta(cls, theta: float, gamma: float = 0.0) -> "FrequencyPoint":
        r = np.sqrt(max(0.0, 1.0 - gamma * gamma))
        return cls(gamma=float(gamma), sigma=float(r * np.cos(theta)),
                   xi=float(r * np.sin(theta)))


@dataclass
class SubspaceBasis:
    """Orthonormal basis of a stable or unstable subspace of A(tau, xi).

    eig_gap is the distance between the selected spectrum and its
    complement (a conditioning diagnostic; 0 at coalescence points, inf for
    an empty selection).
    """

    columns: Array
    side: str
    kind: str
    dim: int
    eig_gap: float


@dataclass
class LopatinskiValue:
    """Determinant value at one frequency point plus diagnostics."""

    delta: complex
    delta_norm: float
    eig_gap_minus: float
    eig_gap_plus: float
    boundary_converged: bool


def symbol_matrix_A(system: HyperbolicSystem, U: Array, tau: complex,
                    xi: float) -> Array:
    """One-sided symbol (tau*I + i*xi*DF2(U)) * DF1(U)^{-1}.

    Positively homogeneous of degree one in (tau, xi). Raises
    CharacteristicBoundaryError when DF1(U) is near-singular.
    """
    J1 = system.jac1(U)
    if np.linalg.cond(J1) > JAC1_MAX_COND:
        raise CharacteristicBoundaryError(
            "normal flux Jacobian is near-singular at the queried state "
            "(characteristic boundary)")
    J2 = system.jac2(U)
    n = system.n
    return (tau * np.eye(n) + 1j * xi * J2) @ np.linalg.inv(J1)


def _normal_jacobian_split(system: HyperbolicSystem, U: Array) -> tuple[Array, int, int]:
    """Real eigenvalues of DF1(U) and the (negative, positive) speed counts."""
    J1 = system.jac1(U)
    lam = np.linalg.eigvals(J1)
    scale = max(1.0, float(np.max(np.abs(lam))))
    if np.max(np.abs(lam.imag)) > 1e-9 * scale:
        raise StructuralError("normal flux Jacobian has complex eigenvalues")
    lam = np.sort(lam.real)
    if np.min(np.abs(lam)) <= 1e-12 * scale:
        raise CharacteristicBoundaryError(
            "normal flux Jacobian has a zero eigenvalue")
    return lam, int(np.sum(lam < 0.0)), int(np.sum(lam > 0.0))


def _fix_phases(Q: Array) -> Array:
    """Rotate each column so its largest-magnitude entry is real positive."""
    Q = np.array(Q, dtype=complex)
    for k in range(Q.shape[1]):
        top = int(np.argmax(np.abs(Q[:, k])))
        z = Q[top, k]
        if abs(z) > 0.0:
            Q[:, k] *= np.conj(z) / abs(z)
    return Q


def _orthonormalize(cols: Array) -> Array:
    """Orthonormal basis of the column span, with fixed phases."""
    cols = np.atleast_2d(np.asarray(cols, dtype=complex))
    if cols.shape[1] == 0:
        return cols
    Q, R = np.linalg.qr(cols)
    diag = np.abs(np.diag(R))
    if np.any(diag < 1e-12 * max(1.0, float(diag.max(initial=0.0)))):
        raise StructuralError("subspace basis is numerically rank-deficient")
    return _fix_phases(Q)


def subspace_distance(Q1: Array, Q2: Array) -> float:
    """Spectral-norm distance of orthogonal projectors (sin of the largest
    principal angle for equal-dimension subspaces)."""
    P1 = Q1 @ Q1.conj().T
    P2 = Q2 @ Q2.conj().T
    return float(np.linalg.norm(P1 - P2, ord=2))


def _spectral_separation(mu_sel: Array, mu_rest: Array) -> float:
    if len(mu_sel) == 0 or len(mu_rest) == 0:
        return float("inf")
    diffs = np.abs(mu_sel[:, None] - mu_rest[None, :])
    return float(np.min(diffs))


def interior_subspaces(
    system: HyperbolicSystem, U: Array, tau: complex, xi: float,
    side: str = "minus",
) -> tuple[SubspaceBasis, SubspaceBasis]:
    """Stable/unstable invariant subspaces of A(tau, xi) for Re tau > 0.

    Ordered Schur decomposition splits the spectrum by the sign of Re mu;
    dimensions must match the hyperbolic counts (# negative / # positive
    characteristic speeds of DF1(U)), otherwise StructuralError is raised.
    """
    if tau.real < INTERIOR_MIN_GAMMA:
        raise ValueError(
            f"interior evaluations require Re tau >= {INTERIOR_MIN_GAMMA}")
    _, n_neg, n_pos = _normal_jacobian_split(system, U)
    A = symbol_matrix_A(system, U, tau, xi)

    bases = {}
    for kind, selector, expected in (
        ("stable", lambda mu: mu.real < 0.0, n_neg),
        ("unstable", lambda mu: mu.real > 0.0, n_pos),
    ):
        T, Z, sdim = scipy.linalg.schur(A.astype(complex), output="complex",
                                        sort=selector)
        if sdim != expected:
            raise StructuralError(
                f"{kind} subspace dimension {sdim} does not match the "
                f"hyperbolic count {expected} (Re tau = {tau.real:.3e})")
        mu = np.diag(T)
        gap = _spectral_separation(mu[:sdim], mu[sdim:])
        bases[kind] = SubspaceBasis(
            columns=_fix_phases(Z[:, :sdim]), side=side, kind=kind,
            dim=sdim, eig_gap=gap)
    return bases["stable"], bases["unstable"]


def _cluster_neutral(w: Array, idx: list[int], tol: float) -> list[list[int]]:
    """Group neutral eigenvalue indices whose values lie within tol."""
    remaining = sorted(idx, key=lambda i: w[i].imag)
    clusters: list[list[int]] = []
    for i in remaining:
        if clusters and abs(w[i] - w[clusters[-1][-1]]) <= tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return clusters


def _coalesced_direction(A: Array, mu_bar: complex) -> Array:
    """Best kernel direction of (A - mu_bar*I): the limit shared by the
    stable and unstable extensions at a glancing/branch point."""
    _, _, Vh = np.linalg.svd(A - mu_bar * np.eye(A.shape[0]))
    return Vh[-1].conj()


def _probe_sign(A: Array, B: Array, mu: complex, vec: Array) -> float:
    """Fallback classification: track the eigenvalue of A + eta*B nearest to
    (mu, vec) at a small real eta and report the sign of its real part."""
    eta = 1e-6
    w, V = np.linalg.eig(A + eta * B)
    overlaps = np.abs(vec.conj() @ V) / np.linalg.norm(V, axis=0)
    j = int(np.argmax(overlaps))
    return float(np.sign(w[j].real))


def _boundary_classify(
    A: Array, B: Array, n_stable: int, n_unstable: int,
) -> tuple[list[Array], list[Array], list[complex], list[complex]]:
    """Split the spectrum of A(i*sigma, xi) into the gamma -> 0+ limits of
    the stable and unstable subspaces.

    B is dA/dgamma = DF1^{-1}. Eigenvalues off the imaginary axis are
    assigned by the sign of Re mu. Neutral eigenvalues are assigned by the
    first-order drift Re(l^H B r / l^H r); semisimple neutral clusters are
    split by the eigenvalues of the compressed drift matrix; defective
    pairs (glancing/branch points) contribute their coalesced geometric
    direction to both limits.
    """
    n = A.shape[0]
    w, vl, vr = scipy.linalg.eig(A, left=True, right=True)
    scale = max(1.0, float(np.max(np.abs(w))))

    stable_cols: list[Array] = []
    unstable_cols: list[Array] = []
    stable_mu: list[complex] = []
    unstable_mu: list[complex] = []

    def put(sign: float, vec: Array, mu: complex) -> None:
        if sign < 0.0:
            stable_cols.append(vec)
            stable_mu.append(mu)
        else:
            unstable_cols.append(vec)
            unstable_mu.append(mu)

    neutral = [i for i in range(n)
               if abs(w[i].real) <= NEUTRAL_AXIS_TOL * scale]
    for i in range(n):
        if i not in neutral:
            put(np.sign(w[i].real), vr[:, i], complex(w[i]))

    for cluster in _cluster_neutral(w, neutral, CLUSTER_TOL * scale):
        if len(cluster) == 1:
            i = cluster[0]
            r, l = vr[:, i], vl[:, i]
            denom = l.conj() @ r
            if abs(denom) < 1e-12:
                put(_probe_sign(A, B, complex(w[i]), r), r, complex(w[i]))
                continue
            drift = ((l.conj() @ (B @ r)) / denom).real
            if abs(drift) < 1e-12:
                drift = _probe_sign(A, B, complex(w[i]), r)
            put(np.sign(drift), r, complex(w[i]))
            continue

        V = vr[:, cluster] / np.linalg.norm(vr[:, cluster], axis=0)
        smin = float(np.linalg.svd(V, compute_uv=False)[-1])
        mu_bar = complex(np.mean(w[cluster]))
        if smin > 0.3:
            # Semisimple cluster: split the eigenspace by the drift matrix
            # of degenerate first-order perturbation theory.
            L = vl[:, cluster]
            G = L.conj().T @ V
            M = np.linalg.solve(G, L.conj().T @ (B @ V))
            mw, mv = np.linalg.eig(M)
            for k in range(len(cluster)):
                vec = V @ mv[:, k]
                sign = np.sign(mw[k].real)
                if abs(mw[k].real) < 1e-12:
                    sign = _probe_sign(A, B, mu_bar, vec)
                put(sign, vec, mu_bar)
        else:
            # Defective pair: both one-sided limits coalesce onto the
            # geometric eigendirection.
            if len(cluster) != 2:
                raise StructuralError(
                    f"unsupported defective cluster of size {len(cluster)}")
            vec = _coalesced_direction(A, mu_bar)
            put(-1.0, vec, mu_bar)
            put(+1.0, vec, mu_bar)

    if len(stable_cols) != n_stable or len(unstable_cols) != n_unstable:
        raise StructuralError(
            f"boundary classification produced dimensions "
            f"({len(stable_cols)}, {len(unstable_cols)}); expected "
            f"({n_stable}, {n_unstable})")
    return stable_cols, unstable_cols, stable_mu, unstable_mu


def _boundary_flag(
    system: HyperbolicSystem, U: Array, sigma: float, xi: float,
    kind: str, dim: int,
) -> bool:
    """Convergence diagnostic for the boundary limit.

    Evaluates the interior subspace at tau = eta_k + i*sigma over the
    decreasing eta sequence, Richardson-extrapolates the projector sequence
    (the spaces are analytic in eta away from glancing points, so the
    first-order term cancels), and reports whether the last successive
    extrapolant distance is below 1e-7. Non-convergence indicates a
    glancing/branch point.
    """
    if dim == 0:
        return True
    # Interior projectors are basis-free, so a plain eigen split suffices
    # here; the heavier ordered-Schur path stays in interior_subspaces.
    J1 = system.jac1(U)
    invJ1 = np.linalg.inv(J1)
    M1 = 1j * xi * system.jac2(U) @ invJ1
    projectors = []
    for eta in ETA_SEQUENCE:
        A = complex(eta, sigma) * invJ1 + M1
        w, V = np.linalg.eig(A)
        sel = w.real < 0.0 if kind == "stable" else w.real > 0.0
        if int(np.sum(sel)) != dim:
            raise StructuralError(
                f"interior split at eta={eta} has dimension "
                f"{int(np.sum(sel))}, expected {dim}")
        Q, _ = np.linalg.qr(V[:, sel])
        projectors.append(Q @ Q.conj().T)
    extrapolants = []
    for P_coarse, P_fine in zip(projectors[:-1], projectors[1:]):
        extrapolants.append(P_fine + (P_fine - P_coarse) / 9.0)
    last = float(np.linalg.norm(extrapolants[-1] - extrapolants[-2], ord=2))
    return last < FLAG_DISTANCE_TOL


def boundary_subspaces(
    system: HyperbolicSystem, U: Array, sigma: float, xi: float,
    side: str = "minus", kind: str = "stable",
    compute_flag: bool = True,
) -> tuple[SubspaceBasis, bool]:
    """Continuous extension of the stable/unstable subspace to gamma = 0.

    The basis is the exact spectral limit (see _boundary_classify). The
    returned flag reports the eta-sequence convergence diagnostic; False
    indicates a glancing/branch point, where the extension is the coalesced
    limit and remains valid.

    For xi = 0 the limit is exact by inspection: A = tau*DF1^{-1}, so the
    split is by the sign of the characteristic speeds themselves.
    """
    if kind not in ("stable", "unstable"):
        raise ValueError("kind must be 'stable' or 'unstable'")
    lam, n_neg, n_pos = _normal_jacobian_split(system, U)
    J1 = system.jac1(U)

    if abs(xi) <= XI_ZERO_TOL:
        w, V = np.linalg.eig(J1)
        w = w.real
        sel = w < 0.0 if kind == "stable" else w > 0.0
        Q = _orthonormalize(V[:, sel].astype(complex))
        # Spectrum of A at xi=0 is i*sigma/lambda_j.
        mu = 1j * sigma / w
        gap = _spectral_separation(mu[sel], mu[~sel])
        basis = SubspaceBasis(columns=Q, side=side, kind=kind,
                              dim=int(np.sum(sel)), eig_gap=gap)
        return basis, True

    A = symbol_matrix_A(system, U, complex(0.0, sigma), xi)
    B = np.linalg.inv(J1)
    s_cols, u_cols, s_mu, u_mu = _boundary_classify(A, B, n_neg, n_pos)
    if kind == "stable":
        cols, mu_sel, mu_rest = s_cols, np.array(s_mu), np.array(u_mu)
        dim = n_neg
    else:
        cols, mu_sel, mu_rest = u_cols, np.array(u_mu), np.array(s_mu)
        dim = n_pos
    Q = _orthonormalize(np.column_stack(cols) if cols
                        else np.zeros((system.n, 0), dtype=complex))
    gap = _spectral_separation(mu_sel, mu_rest)
    basis = SubspaceBasis(columns=Q, side=side, kind=kind, dim=dim, eig_gap=gap)
    flag = True
    if compute_flag:
        flag = _boundary_flag(system, U, sigma, xi, kind, dim)
    return basis, flag


def jump_column(shock: ShockWave, tau: complex, xi: float) -> Array:
    """Jump vector tau*[U] + i*xi*[F2(U)], brackets = plus minus minus."""
    system = shock.system
    jump_U = shock.U_plus - shock.U_minus
    jump_F2 = system.flux2(shock.U_plus) - system.flux2(shock.U_minus)
    return tau * jump_U.astype(complex) + 1j * xi * jump_F2.astype(complex)


def lopatinski_delta(
    shock: ShockWave, point: FrequencyPoint, compute_flag: bool = True,
) -> LopatinskiValue:
    """Normalized Lopatinski determinant at one frequency point.

    Assembles [stable basis at U_minus | unit jump column | unstable basis
    at U_plus] and returns its determinant. With orthonormal subspace
    blocks and a unit jump column, |delta| lies in [0, 1], depends only on
    the subspaces (not the basis choice), and vanishes exactly when the
    union of the decaying modes and the jump direction is linearly
    dependent.
    """
    system = shock.system
    n = system.n
    j = jump_column(shock, point.tau, point.xi)
    jump_scale = (np.linalg.norm(shock.U_plus - shock.U_minus)
                  + np.linalg.norm(system.flux2(shock.U_plus)
                                   - system.flux2(shock.U_minus)))
    if jump_scale < 1e-14:
        raise DegenerateShockError("shock has identical states; no jump")
    nj = float(np.linalg.norm(j))
    if nj < JUMP_DEGENERATE_TOL * jump_scale:
        raise DegenerateShockError(
            "jump column vanishes at this frequency point")

    if point.gamma >= INTERIOR_MIN_GAMMA:
        stable_minus, _ = interior_subspaces(
            system, shock.U_minus, point.tau, point.xi, side="minus")
        _, unstable_plus = interior_subspaces(
            system, shock.U_plus, point.tau, point.xi, side="plus")
        converged = True
    elif point.gamma == 0.0:
        stable_minus, flag_minus = boundary_subspaces(
            system, shock.U_minus, point.sigma, point.xi,
            side="minus", kind="stable", compute_flag=compute_flag)
        unstable_plus, flag_plus = boundary_subspaces(
            system, shock.U_plus, point.sigma, point.xi,
            side="plus", kind="unstable", compute_flag=compute_flag)
        converged = flag_minus and flag_plus
    else:
        raise ValueError(
            f"Re tau = {point.gamma} is below the interior floor "
            f"{INTERIOR_MIN_GAMMA} but not zero")

    M = np.hstack([stable_minus.columns, (j / nj)[:, None],
                   unstable_plus.columns])
    if M.shape != (n, n):
        raise StructuralError(
            f"column counts {stable_minus.dim} + 1 + {unstable_plus.dim} "
            f"do not fill dimension {n} (non-Laxian input)")
    delta = complex(np.linalg.det(M))
    return LopatinskiValue(
        delta=delta,
        delta_norm=abs(delta),
        eig_gap_minus=stable_minus.eig_gap,
        eig_gap_plus=unstable_plus.eig_gap,
        boundary_converged=converged,
    )
