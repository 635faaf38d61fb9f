"""Readers for the scan CSV / report JSON contracts.

This package only consumes the documented schemas; it never recomputes
determinant values.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

EXPECTED_HEADER = [
    "theta", "gamma", "sigma", "xi", "re_delta", "im_delta", "delta_norm",
    "eig_gap_minus", "eig_gap_plus", "boundary_converged",
]


class SchemaError(Exception):
    """The input file does not match the documented artifact schema."""


def read_scan_csv(path: str | Path) -> dict[str, np.ndarray]:
    """Parse a scan CSV into column arrays, validating the exact header."""
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"CSV not found: {path}")
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: file is empty") from None
        if header != EXPECTED_HEADER:
            raise SchemaError(
                f"{path}: header {header!r} does not match the scan schema "
                f"{EXPECTED_HEADER!r}")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")

    columns: dict[str, list] = {name: [] for name in EXPECTED_HEADER}
    for lineno, row in enumerate(rows, start=2):
        if len(row) != len(EXPECTED_HEADER):
            raise SchemaError(
                f"{path}:{lineno}: expected {len(EXPECTED_HEADER)} fields, "
                f"got {len(row)}")
        for name, cell in zip(EXPECTED_HEADER, row):
            if name == "boundary_converged":
                if cell not in ("true", "false"):
                    raise SchemaError(
                        f"{path}:{lineno}: boundary_converged must be "
                        f"'true' or 'false', got {cell!r}")
                columns[name].append(cell == "true")
            else:
                try:
                    columns[name].append(float(cell))
                except ValueError:
                    raise SchemaError(
                        f"{path}:{lineno}: non-numeric value {cell!r} "
                        f"in column {name}") from None
    return {name: np.asarray(values) for name, values in columns.items()}


def read_report(path: str | Path) -> dict:
    """Parse a report JSON, checking for the fields the plots consume."""
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"report not found: {path}")
    try:
        report = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None
    for key in ("zeros", "predicted_branch_points", "min_delta_norm"):
        if key not in report:
            raise SchemaError(f"{path}: missing report field {key!r}")
    return report
