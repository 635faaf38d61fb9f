"""Frequency-hemisphere scans and zero localization for delta_norm.

The boundary scan samples delta_norm on a uniform angle grid, seeds a
refinement bracket at every strict local minimum, and golden-section
minimizes each bracket. A refined minimum counts as a zero when its value
falls below the zero threshold. The determinant has square-root cusps at
its boundary zeros, so brackets are narrowed well past the reporting
accuracy to drive the minimum value down to the threshold.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import BracketError
from .factory import BranchPointSet
from .lopatinski import FrequencyPoint, lopatinski_delta
from .shocks import ShockWave

TWO_PI = 2.0 * math.pi
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

ZERO_THRESHOLD = 1e-6
REFINE_THETA_TOL = 1e-13
HEMISPHERE_GAMMA_MIN = 1e-3
# Refined minimizers closer than this are duplicates of one zero.
DEDUPE_THETA_TOL = 1e-7
# Reported zeros are matched to predictions within this angle.
MATCH_THETA_TOL = 1e-3


@dataclass
class ScanRecord:
    """One scanned frequency point with determinant value and diagnostics."""

    theta: float
    gamma: float
    sigma: float
    xi: float
    re_delta: float
    im_delta: float
    delta_norm: float
    eig_gap_minus: float
    eig_gap_plus: float
    boundary_converged: bool


@dataclass
class RefinedZero:
    """A refined boundary zero of delta_norm."""

    theta: float
    delta_norm: float
    matched_prediction: Optional[int]
    distance: float


def _record_at(shock: ShockWave, point: FrequencyPoint, theta: float) -> ScanRecord:
    value = lopatinski_delta(shock, point)
    return ScanRecord(
        theta=theta,
        gamma=point.gamma,
        sigma=point.sigma,
        xi=point.xi,
        re_delta=value.delta.real,
        im_delta=value.delta.imag,
        delta_norm=value.delta_norm,
        eig_gap_minus=value.eig_gap_minus,
        eig_gap_plus=value.eig_gap_plus,
        boundary_converged=value.boundary_converged,
    )


def _map_points(shock: ShockWave, jobs: list[tuple[FrequencyPoint, float]],
                threads: int) -> list[ScanRecord]:
    if threads <= 1:
        return [_record_at(shock, pt, th) for pt, th in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda job: _record_at(shock, *job), jobs))


def scan_boundary(shock: ShockWave, resolution: int,
                  threads: int = 1) -> list[ScanRecord]:
    """Evaluate delta_norm at theta_k = 2*pi*k/resolution on the boundary.

    Records are returned theta-ascending; evaluation order does not affect
    the output.
    """
    if resolution < 16:
        raise ValueError("boundary resolution must be at least 16")
    jobs = []
    for k in range(resolution):
        theta = TWO_PI * k / resolution
        jobs.append((FrequencyPoint.from_theta(theta), theta))
    return _map_points(shock, jobs, threads)


def hemisphere_grid(resolution: int,
                    gamma_min: float = HEMISPHERE_GAMMA_MIN
                    ) -> list[tuple[float, float]]:
    """Latitude-ring grid on gamma^2 + sigma^2 + xi^2 = 1, gamma >= gamma_min.

    Rings: J = max(2, resolution // 8) levels gamma_j spaced uniformly in
    [gamma_min, 1]. Ring j of radius r_j = sqrt(1 - gamma_j^2) carries
    K_j = max(4, ceil(resolution * r_j)) angles (a single point when the
    radius vanishes at the pole). The grid size is the sum of the K_j.
    """
    rings = max(2, resolution // 8)
    grid = []
    for j in range(rings):
        gamma = gamma_min + (1.0 - gamma_min) * j / (rings - 1)
        radius = math.sqrt(max(0.0, 1.0 - gamma * gamma))
        if radius < 1e-12:
            grid.append((gamma, 0.0))
            continue
        count = max(4, math.ceil(resolution * radius))
        for i in range(count):
            grid.append((gamma, TWO_PI * i / count))
    return grid


def hemisphere_grid_size(resolution: int,
                         gamma_min: float = HEMISPHERE_GAMMA_MIN) -> int:
    """Cardinality of hemisphere_grid for the same parameters."""
    return len(hemisphere_grid(resolution, gamma_min))


def scan_hemisphere(shock: ShockWave, resolution: int,
                    gamma_min: float = HEMISPHERE_GAMMA_MIN,
                    threads: int = 1) -> list[ScanRecord]:
    """Evaluate delta_norm on the interior grid (gamma >= gamma_min).

    Records are ordered by (gamma, theta).
    """
    if resolution < 8:
        raise ValueError("hemisphere resolution must be at least 8")
    jobs = []
    for gamma, theta in hemisphere_grid(resolution, gamma_min):
        jobs.append((FrequencyPoint.from_theta(theta, gamma=gamma), theta))
    return _map_points(shock, jobs, threads)


def _eval_norm(shock: ShockWave, theta: float) -> float:
    point = FrequencyPoint.from_theta(theta % TWO_PI)
    return lopatinski_delta(shock, point, compute_flag=False).delta_norm


def refine_zero(shock: ShockWave, theta_bracket: tuple[float, float],
                tol: float = REFINE_THETA_TOL) -> tuple[float, float]:
    """Golden-section minimization of delta_norm over a boundary bracket.

    Returns (theta_star, delta_norm_star), the best evaluated point. A
    bracket whose interior lies above both endpoints is rejected as
    non-unimodal. A zero-width bracket returns its endpoint evaluation.
    """
    lo, hi = float(theta_bracket[0]), float(theta_bracket[1])
    if hi < lo:
        raise ValueError("bracket must satisfy lo <= hi")
    if hi == lo:
        return lo % TWO_PI, _eval_norm(shock, lo)

    f_lo = _eval_norm(shock, lo)
    f_hi = _eval_norm(shock, hi)
    best_theta, best_value = (lo, f_lo) if f_lo <= f_hi else (hi, f_hi)

    c = hi - GOLDEN * (hi - lo)
    d = lo + GOLDEN * (hi - lo)
    f_c = _eval_norm(shock, c)
    f_d = _eval_norm(shock, d)
    if f_c > f_lo and f_d > f_hi:
        raise BracketError(
            "delta_norm decreases toward both bracket ends; the bracket "
            "does not enclose a local minimum")

    while hi - lo > tol:
        if f_c < f_d:
            hi, d, f_d = d, c, f_c
            c = hi - GOLDEN * (hi - lo)
            f_c = _eval_norm(shock, c)
        else:
            lo, c, f_c = c, d, f_d
            d = lo + GOLDEN * (hi - lo)
            f_d = _eval_norm(shock, d)
        for th, fv in ((c, f_c), (d, f_d)):
            if fv < best_value:
                best_theta, best_value = th, fv
    return best_theta % TWO_PI, best_value


def find_local_minima(records: Sequence[ScanRecord]) -> list[int]:
    """Indices of strict local minima of delta_norm on the cyclic grid."""
    values = [r.delta_norm for r in records]
    n = len(values)
    minima = []
    for k in range(n):
        if values[k] < values[(k - 1) % n] and values[k] < values[(k + 1) % n]:
            minima.append(k)
    return minima


def _circular_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def locate_zeros(
    shock: ShockWave,
    records: Sequence[ScanRecord],
    predictions: Optional[BranchPointSet] = None,
    zero_threshold: float = ZERO_THRESHOLD,
) -> list[RefinedZero]:
    """Refine every grid local minimum and keep those below the threshold.

    Each kept zero is matched to the nearest predicted branch point (when
    predictions are supplied) with its angular distance recorded. Refined
    minimizers within DEDUPE_THETA_TOL collapse to the best one.
    """
    step = TWO_PI / len(records)
    refined: list[tuple[float, float]] = []
    for k in find_local_minima(records):
        theta_k = records[k].theta
        bracket = (theta_k - step, theta_k + step)
        try:
            theta_star, value = refine_zero(shock, bracket)
        except BracketError:
            continue
        # Monotone refinement: never report worse than the seed value.
        if records[k].delta_norm < value:
            theta_star, value = theta_k, records[k].delta_norm
        refined.append((theta_star, value))

    refined.sort(key=lambda tv: tv[1])
    kept: list[tuple[float, float]] = []
    for theta_star, value in refined:
        if value >= zero_threshold:
            continue
        if any(_circular_distance(theta_star, t) < DEDUPE_THETA_TOL
               for t, _ in kept):
            continue
        kept.append((theta_star, value))
    kept.sort(key=lambda tv: tv[0])

    zeros = []
    for theta_star, value in kept:
        matched: Optional[int] = None
        distance = math.inf
        if predictions is not None and len(predictions) > 0:
            dists = [_circular_distance(theta_star, t)
                     for t in predictions.thetas]
            j = int(np.argmin(dists))
            distance = float(dists[j])
            if distance < MATCH_THETA_TOL:
                matched = j
        zeros.append(RefinedZero(theta=theta_star, delta_norm=value,
                                 matched_prediction=matched,
                                 distance=distance))
    return zeros
