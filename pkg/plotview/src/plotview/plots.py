"""Figure rendering for boundary traces and hemisphere heatmaps."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import SchemaError, read_report, read_scan_csv

LOG_FLOOR = 1e-16


@dataclass
class PlotJob:
    """One rendering task: scan CSV in, image out."""

    csv_path: str
    out_path: str
    report_path: Optional[str] = None
    log_scale: bool = False
    marker_size: float = 60.0


def _load(job: PlotJob) -> tuple[dict, Optional[dict]]:
    data = read_scan_csv(job.csv_path)
    report = read_report(job.report_path) if job.report_path else None
    return data, report


def plot_boundary(job: PlotJob) -> dict:
    """Unrolled-angle trace of delta_norm with zero/prediction overlays.

    Returns metadata: rows plotted, zero markers drawn, predictions drawn.
    """
    data, report = _load(job)
    boundary = data["gamma"] == 0.0
    if not np.any(boundary):
        raise SchemaError(f"{job.csv_path}: no boundary (gamma = 0) rows")
    theta = data["theta"][boundary]
    norm = data["delta_norm"][boundary]
    order = np.argsort(theta)
    theta, norm = theta[order], norm[order]

    fig, ax = plt.subplots(figsize=(9.0, 4.5))
    if job.log_scale:
        ax.semilogy(theta, np.maximum(norm, LOG_FLOOR), lw=1.0, color="navy")
    else:
        ax.plot(theta, norm, lw=1.0, color="navy")

    n_predictions = 0
    n_zeros = 0
    if report is not None:
        for pt in report.get("predicted_branch_points", []):
            ax.axvline(pt["theta"], color="crimson", ls="--", lw=0.8,
                       alpha=0.7)
            n_predictions += 1
        zeros = report.get("zeros", [])
        if zeros:
            zt = [z["theta"] for z in zeros]
            zv = [max(z["delta_norm"], LOG_FLOOR) if job.log_scale
                  else z["delta_norm"] for z in zeros]
            ax.scatter(zt, zv, s=job.marker_size, marker="v", color="crimson",
                       zorder=5, label=f"{len(zeros)} refined zeros")
            ax.legend(loc="upper right")
            n_zeros = len(zeros)

    k = int(np.argmin(norm))
    ax.annotate(f"min {norm[k]:.3e}", xy=(theta[k], max(norm[k], LOG_FLOOR)),
                xytext=(8, 12), textcoords="offset points", fontsize=8)
    ax.set_xlabel(r"boundary angle $\theta$  ($\sigma=\cos\theta,\ \xi=\sin\theta$)")
    ax.set_ylabel(r"$|\Delta|$ (normalized)")
    ax.set_xlim(0.0, 2.0 * np.pi)
    ax.grid(alpha=0.25)
    fig.tight_layout()
    fig.savefig(job.out_path, dpi=150)
    plt.close(fig)
    return {"rows": int(theta.size), "zero_markers": n_zeros,
            "prediction_lines": n_predictions, "out_path": job.out_path}


def plot_hemisphere(job: PlotJob) -> dict:
    """Heatmap of delta_norm over the (sigma, xi) disk for gamma > 0 rows."""
    data, report = _load(job)
    interior = data["gamma"] > 0.0
    if not np.any(interior):
        raise SchemaError(
            f"{job.csv_path}: no interior (gamma > 0) rows; run the scan "
            f"with --hemisphere")
    sigma = data["sigma"][interior]
    xi = data["xi"][interior]
    norm = np.maximum(data["delta_norm"][interior], LOG_FLOOR)

    fig, ax = plt.subplots(figsize=(6.0, 5.4))
    sc = ax.scatter(sigma, xi, c=np.log10(norm), s=16.0, cmap="viridis")
    circle = plt.Circle((0.0, 0.0), 1.0, fill=False, color="gray", lw=0.8)
    ax.add_patch(circle)
    n_predictions = 0
    if report is not None:
        for pt in report.get("predicted_branch_points", []):
            ax.scatter([pt["sigma"]], [pt["xi"]], marker="x", s=50.0,
                       color="crimson")
            n_predictions += 1
    fig.colorbar(sc, ax=ax, label=r"$\log_{10}|\Delta|$")
    ax.set_xlabel(r"$\sigma$")
    ax.set_ylabel(r"$\xi$")
    ax.set_aspect("equal")
    ax.set_title("disk projection of the hemisphere scan")
    fig.tight_layout()
    fig.savefig(job.out_path, dpi=150)
    plt.close(fig)
    return {"rows": int(sigma.size), "zero_markers": 0,
            "prediction_lines": n_predictions, "out_path": job.out_path}
