"""Plotting frontend for simulator results CSVs.

Consumes ``results.csv`` files exactly as the simulator emits them and
renders one two-panel BER/MSE figure per block length. No simulator code is
imported; the CSV is the only interface.
"""

from .reader import (
    REQUIRED_COLUMNS,
    EmptySelectionError,
    ResultRow,
    SchemaError,
    load_results,
    select,
)
from .render import CLAMP_FLOOR, CLAMP_LABEL, PlotSpec, build_figure, render

__all__ = [
    "REQUIRED_COLUMNS",
    "EmptySelectionError",
    "ResultRow",
    "SchemaError",
    "load_results",
    "select",
    "CLAMP_FLOOR",
    "CLAMP_LABEL",
    "PlotSpec",
    "build_figure",
    "render",
]
