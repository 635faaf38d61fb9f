"""Command-line driver: build a fixture, scan, refine zeros, emit artifacts.

Writes scan.csv (one row per scanned point, theta-ascending within each
gamma level) and report.json (fixture, shock, predictions, zeros, minima,
timings) into the output directory. Exit codes: 0 completed, 1 bad
configuration, 2 zeros found under --expect-stable, 3 no zeros under
--expect-zeros. Artifacts are written even when an expectation fails.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .factory import (
    BranchPointSet,
    augment_shock,
    couple,
    predict_branch_points,
)
from .scan import (
    RefinedZero,
    ScanRecord,
    ZERO_THRESHOLD,
    locate_zeros,
    scan_boundary,
    scan_hemisphere,
)
from .shocks import ShockFamilyParams, ShockWave, lax_classify, rh_residual, solve_zero_speed_shock
from .systems import euler_isentropic

CSV_HEADER = ("theta,gamma,sigma,xi,re_delta,im_delta,delta_norm,"
              "eig_gap_minus,eig_gap_plus,boundary_converged")

PRESETS = ("paper-counterexample", "pure-euler-extreme")

EULER_BASE_STATE = np.array([1.0, -1.0, 0.0])
EULER_FAMILY = 3


@dataclass
class ScanConfig:
    """Resolved configuration of one CLI run."""

    preset: str
    s: float = 3.0
    eps: float = 0.1
    coupling: float = 0.0
    resolution: int = 4096
    hemisphere: bool = False
    expect: Optional[str] = None
    out_dir: str = "scan-out"
    threads: int = 1
    zero_threshold: float = ZERO_THRESHOLD

    def validate(self) -> None:
        if self.preset not in PRESETS:
            raise ValueError(
                f"unknown preset {self.preset!r}; choose from {PRESETS}")
        if self.eps <= 0.0:
            raise ValueError("--eps must be positive")
        if self.resolution < 16:
            raise ValueError("--resolution must be at least 16")
        if self.threads < 1:
            raise ValueError("--threads must be at least 1")
        if self.expect not in (None, "zeros", "stable"):
            raise ValueError("expectation must be 'zeros' or 'stable'")


def build_fixture(config: ScanConfig) -> tuple[ShockWave, Optional[BranchPointSet]]:
    """Construct the preset's shock and, when applicable, its predictions."""
    base_system = euler_isentropic()
    params = ShockFamilyParams(system=base_system, u_star=EULER_BASE_STATE,
                               p=EULER_FAMILY, epsilon=config.eps)
    base_shock = solve_zero_speed_shock(params)
    if config.preset == "pure-euler-extreme":
        return base_shock, None
    coupled = couple(base_system, config.s, config.coupling)
    shock = augment_shock(base_shock, coupled)
    return shock, predict_branch_points(config.s)


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def write_csv(path: Path, records: list[ScanRecord]) -> None:
    rows = sorted(records, key=lambda r: (r.gamma, r.theta))
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(",".join([
            _fmt(r.theta), _fmt(r.gamma), _fmt(r.sigma), _fmt(r.xi),
            _fmt(r.re_delta), _fmt(r.im_delta), _fmt(r.delta_norm),
            _fmt(r.eig_gap_minus), _fmt(r.eig_gap_plus),
            "true" if r.boundary_converged else "false",
        ]))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _shock_payload(shock: ShockWave) -> dict:
    cls = lax_classify(shock)
    residual = rh_residual(shock.system, shock.U_minus, shock.U_plus,
                           shock.speed, shock.N)
    return {
        "system": shock.system.name,
        "U_minus": list(shock.U_minus),
        "U_plus": list(shock.U_plus),
        "speed": shock.speed,
        "N": list(shock.N),
        "family": shock.p,
        "dimension": shock.system.n,
        "epsilon": shock.epsilon,
        "rh_residual_norm": float(np.linalg.norm(residual)),
        "incoming_modes": cls.incoming,
        "outgoing_modes": cls.outgoing,
    }


def _zeros_payload(zeros: list[RefinedZero]) -> list[dict]:
    return [
        {
            "theta": z.theta,
            "delta_norm": z.delta_norm,
            "matched_prediction": z.matched_prediction,
            "distance": None if not np.isfinite(z.distance) else z.distance,
        }
        for z in zeros
    ]


def run(config: ScanConfig) -> int:
    """Execute one scan run and write artifacts; returns the exit code."""
    config.validate()
    started = time.perf_counter()
    shock, predictions = build_fixture(config)

    records = scan_boundary(shock, config.resolution, threads=config.threads)
    boundary_records = list(records)
    if config.hemisphere:
        records = records + scan_hemisphere(shock, config.resolution,
                                            threads=config.threads)
    zeros = locate_zeros(shock, boundary_records, predictions,
                         zero_threshold=config.zero_threshold)
    wall = time.perf_counter() - started

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_csv(out_dir / "scan.csv", records)

    min_norm = min(r.delta_norm for r in records)
    report = {
        "fixture": {
            "preset": config.preset,
            "s": config.s if config.preset == "paper-counterexample" else None,
            "eps": config.eps,
            "coupling": (config.coupling
                         if config.preset == "paper-counterexample" else None),
        },
        "shock": _shock_payload(shock),
        "predicted_branch_points": (
            [{"sigma": pt.sigma, "xi": pt.xi, "theta": pt.theta}
             for pt in predictions] if predictions is not None else []),
        "zeros": _zeros_payload(zeros),
        "min_delta_norm": min_norm,
        "wall_time_s": wall,
        "config": asdict(config),
    }
    (out_dir / "report.json").write_text(
        json.dumps(report, indent=2) + "\n", encoding="utf-8")

    if config.expect == "stable" and zeros:
        return 2
    if config.expect == "zeros" and not zeros:
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scan",
        description=("Scan the Lopatinski determinant of a preset shock "
                     "over the boundary of the frequency hemisphere."))
    parser.add_argument("--preset", required=True, choices=PRESETS)
    parser.add_argument("--s", type=float, default=3.0,
                        help="auxiliary wave speed (counterexample preset)")
    parser.add_argument("--eps", type=float, default=0.1,
                        help="shock amplitude")
    parser.add_argument("--coupling", type=float, default=0.0,
                        help="quadratic coupling amplitude (0 = block-diagonal)")
    parser.add_argument("--resolution", type=int, default=4096)
    parser.add_argument("--hemisphere", action="store_true",
                        help="also scan an interior gamma > 0 grid")
    expect = parser.add_mutually_exclusive_group()
    expect.add_argument("--expect-zeros", action="store_true")
    expect.add_argument("--expect-stable", action="store_true")
    parser.add_argument("--out", default="scan-out")
    parser.add_argument("--threads", type=int, default=1)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; the CLI contract is exit 1.
        return 0 if exc.code in (0, None) else 1

    expect = None
    if args.expect_zeros:
        expect = "zeros"
    elif args.expect_stable:
        expect = "stable"
    config = ScanConfig(
        preset=args.preset,
        s=args.s,
        eps=args.eps,
        coupling=args.coupling,
        resolution=args.resolution,
        hemisphere=args.hemisphere,
        expect=expect,
        out_dir=args.out,
        threads=args.threads,
    )
    try:
        return run(config)
    except ValueError as exc:
        print(f"scan: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
