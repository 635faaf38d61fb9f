"""plotview command line: render scan artifacts to figures.

Exit codes: 0 rendered, 1 usage error, 2 schema/data error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .io import SchemaError
from .plots import PlotJob, plot_boundary, plot_hemisphere


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotview",
        description="Render shockscan CSV/JSON artifacts into figures.")
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode, help_text in (
        ("boundary", "delta_norm trace over the boundary angle"),
        ("hemisphere", "delta_norm heatmap over the (sigma, xi) disk"),
    ):
        p = sub.add_parser(mode, help=help_text)
        p.add_argument("--csv", required=True, help="scan.csv path")
        p.add_argument("--report", default=None,
                       help="report.json path for zero/prediction overlays")
        p.add_argument("--out", required=True, help="output image path")
        p.add_argument("--log", action="store_true",
                       help="log-scale values, clamped at 1e-16")
        p.add_argument("--marker-size", type=float, default=60.0)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1

    job = PlotJob(csv_path=args.csv, out_path=args.out,
                  report_path=args.report, log_scale=args.log,
                  marker_size=args.marker_size)
    render = plot_boundary if args.mode == "boundary" else plot_hemisphere
    try:
        meta = render(job)
    except SchemaError as exc:
        print(f"plotview: {exc}", file=sys.stderr)
        return 2
    print(f"plotview: wrote {meta['out_path']} "
          f"({meta['rows']} rows, {meta['zero_markers']} zero markers)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
