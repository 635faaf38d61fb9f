"""Characteristic analysis of 2-D conservation-law systems.

Provides the directional symbol, ordered characteristic fields, a
constant-multiplicity sampler, and the two convexity quantities for a
selected mode: the genuine-nonlinearity coefficient (gradient of the mode
speed along its own eigenvector) and the second derivative of the mode
speed in the tangential frequency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import HyperbolicityError, MultiplicityError
from .systems import FD_STEP, HyperbolicSystem

Array = np.ndarray

# Relative gap below which two real eigenvalues count as one cluster.
MULTIPLICITY_GAP = 1e-8
# Residual ceiling for eigenpairs of the directional symbol.
EIGEN_RESIDUAL_TOL = 1e-10


@dataclass
class CharField:
    """One characteristic field of a system at a state and direction.

    Fields are indexed 1..n in ascending speed order. The right eigenvector
    is unit length with its largest-magnitude component positive; the left
    eigenvector is scaled so that l . r = 1.
    """

    index: int
    speed: float
    right_vec: Array
    left_vec: Array


def eval_symbol(system: HyperbolicSystem, U: Array, nu: Array) -> Array:
    """Directional symbol nu1*DF1(U) + nu2*DF2(U).

    Linear in nu; nu need not be unit length but must be nonzero.
    """
    nu = np.asarray(nu, dtype=float)
    if nu.shape != (2,):
        raise ValueError("direction must be a 2-vector")
    if nu[0] == 0.0 and nu[1] == 0.0:
        raise ValueError("direction must be nonzero")
    return nu[0] * system.jac1(U) + nu[1] * system.jac2(U)


def _real_eigensystem(M: Array) -> tuple[Array, Array, Array]:
    """Eigen-decomposition of a real matrix expected to be real-diagonalizable.

    Returns (speeds ascending, right vectors as columns, left vectors as
    columns), all real. Raises HyperbolicityError on complex eigenvalues or
    poor residuals.
    """
    w, vl, vr = scipy.linalg.eig(M, left=True, right=True)
    scale = max(1.0, float(np.max(np.abs(w))))
    if np.max(np.abs(w.imag)) > EIGEN_RESIDUAL_TOL * scale:
        raise HyperbolicityError(
            f"complex characteristic speeds detected: {w}")
    order = np.argsort(w.real, kind="stable")
    speeds = w.real[order]
    R = np.real_if_close(vr[:, order], tol=1e6)
    L = np.real_if_close(vl[:, order], tol=1e6)
    if np.iscomplexobj(R) or np.iscomplexobj(L):
        raise HyperbolicityError("eigenvectors are not real within tolerance")
    return speeds, np.asarray(R, dtype=float), np.asarray(L, dtype=float)


def char_fields(system: HyperbolicSystem, U: Array, N: Array) -> list[CharField]:
    """Ordered characteristic fields of the symbol at (U, N).

    Speeds ascend; eigenvector signs are fixed so the largest-magnitude
    component of each right vector is positive, and left vectors satisfy
    l . r = 1. Eigen-residuals above 1e-10 raise HyperbolicityError.
    """
    M = eval_symbol(system, U, N)
    speeds, R, L = _real_eigensystem(M)
    scale = max(1.0, float(np.max(np.abs(speeds))))
    fields = []
    for k in range(system.n):
        r = R[:, k] / np.linalg.norm(R[:, k])
        top = int(np.argmax(np.abs(r)))
        if r[top] < 0.0:
            r = -r
        l = L[:, k]
        lr = float(l @ r)
        if abs(lr) < 1e-13:
            raise HyperbolicityError(
                f"left/right eigenvectors of mode {k + 1} are near-orthogonal")
        l = l / lr
        res_r = np.linalg.norm(M @ r - speeds[k] * r)
        res_l = np.linalg.norm(l @ M - speeds[k] * l) / np.linalg.norm(l)
        if max(res_r, res_l) > EIGEN_RESIDUAL_TOL * scale:
            raise HyperbolicityError(
                f"eigen-residual {max(res_r, res_l):.3e} exceeds tolerance "
                f"for mode {k + 1}")
        fields.append(CharField(index=k + 1, speed=float(speeds[k]),
                                right_vec=r, left_vec=l))
    return fields


def sorted_speeds(system: HyperbolicSystem, U: Array, N: Array) -> Array:
    """Ascending characteristic speeds of the symbol at (U, N)."""
    M = eval_symbol(system, U, N)
    w = np.linalg.eigvals(M)
    scale = max(1.0, float(np.max(np.abs(w))))
    if np.max(np.abs(w.imag)) > EIGEN_RESIDUAL_TOL * scale:
        raise HyperbolicityError(f"complex characteristic speeds detected: {w}")
    return np.sort(w.real)


def _multiplicity_pattern(speeds: Array) -> tuple[int, ...]:
    """Cluster sizes of sorted speeds at relative gap MULTIPLICITY_GAP."""
    scale = max(1.0, float(np.max(np.abs(speeds))))
    sizes = [1]
    for a, b in zip(speeds[:-1], speeds[1:]):
        if b - a <= MULTIPLICITY_GAP * scale:
            sizes[-1] += 1
        else:
            sizes.append(1)
    return tuple(sizes)


def check_constant_multiplicity(
    system: HyperbolicSystem, U: Array, num_dirs: int = 64
) -> tuple[bool, tuple[int, ...]]:
    """Sample unit directions and compare eigenvalue multiplicity patterns.

    Returns (True, pattern) when the sorted cluster-size pattern is the same
    for every sampled direction, else (False, pattern of the first sample).
    """
    if num_dirs < 8:
        raise ValueError("num_dirs must be at least 8")
    patterns = []
    for k in range(num_dirs):
        phi = 2.0 * np.pi * k / num_dirs
        nu = np.array([np.cos(phi), np.sin(phi)])
        patterns.append(_multiplicity_pattern(sorted_speeds(system, U, nu)))
    first = patterns[0]
    return all(p == first for p in patterns), first


def _require_simple(system: HyperbolicSystem, U: Array, N: Array, p: int) -> Array:
    speeds = sorted_speeds(system, U, N)
    n = system.n
    if not 1 <= p <= n:
        raise ValueError(f"family index p must be in 1..{n}")
    scale = max(1.0, float(np.max(np.abs(speeds))))
    lam = speeds[p - 1]
    for q in range(n):
        if q != p - 1 and abs(speeds[q] - lam) <= MULTIPLICITY_GAP * scale:
            raise MultiplicityError(
                f"mode p={p} is not simple at this state/direction "
                f"(speeds {speeds})")
    return speeds


def metivier_genuine_nonlinearity(
    system: HyperbolicSystem, U: Array, N: Array, p: int
) -> float:
    """Genuine-nonlinearity coefficient grad_U lambda_p(U, N) . r_p.

    The gradient is taken by central finite differences of the p-th sorted
    eigenvalue; r_p comes from char_fields. The mode is genuinely nonlinear
    iff the result is nonzero.
    """
    U = np.asarray(U, dtype=float)
    _require_simple(system, U, N, p)
    r_p = char_fields(system, U, N)[p - 1].right_vec
    grad = np.zeros(system.n)
    for j in range(system.n):
        h = FD_STEP * max(1.0, abs(U[j]))
        e = np.zeros(system.n)
        e[j] = h
        lam_plus = sorted_speeds(system, U + e, N)[p - 1]
        lam_minus = sorted_speeds(system, U - e, N)[p - 1]
        grad[j] = (lam_plus - lam_minus) / (2.0 * h)
    return float(grad @ r_p)


def metivier_transverse_convexity(
    system: HyperbolicSystem, U: Array, N: Array, p: int,
    base_step: float = 1e-4,
) -> float:
    """Second derivative of the mode speed in the tangential frequency.

    With T the unit vector perpendicular to N, evaluates
    Lambda(xi) = lambda_p(U, N + xi*T) on the unnormalized direction
    (homogeneous-symbol convention) and returns the Richardson-extrapolated
    central second difference at xi = 0. The mode is transversally convex
    iff the result is positive.
    """
    U = np.asarray(U, dtype=float)
    N = np.asarray(N, dtype=float)
    _require_simple(system, U, N, p)
    T = np.array([-N[1], N[0]])

    def mode_speed(xi: float) -> float:
        return float(sorted_speeds(system, U, N + xi * T)[p - 1])

    f0 = mode_speed(0.0)

    def second_diff(h: float) -> float:
        return (mode_speed(h) - 2.0 * f0 + mode_speed(-h)) / (h * h)

    d_h = second_diff(base_step)
    d_h2 = second_diff(base_step / 2.0)
    # One Richardson level removes the O(h^2) truncation term.
    return float((4.0 * d_h2 - d_h) / 3.0)
