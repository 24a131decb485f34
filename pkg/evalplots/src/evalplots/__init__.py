"""Static figures from route-spoofing evaluation CSVs."""

from .errors import EmptyInput, InvalidOutput, ParseError, PlotError
from .plots import (
    CdfSeries,
    CoverageBin,
    RadiusPoint,
    plot_coverage_vs_distance,
    plot_displacement_cdf,
    plot_radius_sweep,
)
from .rows import HEADER, EvalRow, read_rows

__all__ = [
    "CdfSeries",
    "CoverageBin",
    "EmptyInput",
    "EvalRow",
    "HEADER",
    "InvalidOutput",
    "ParseError",
    "PlotError",
    "RadiusPoint",
    "plot_coverage_vs_distance",
    "plot_displacement_cdf",
    "plot_radius_sweep",
    "read_rows",
]
