"""plotview: figure renderer for shockscan scan.csv / report.json files."""

from .io import SchemaError, read_report, read_scan_csv
from .plots import PlotJob, plot_boundary, plot_hemisphere

__version__ = "0.1.0"
