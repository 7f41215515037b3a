"""Figure scripts for qnetperc sweep and analysis artifacts."""

from .artifacts import (
    CurveData,
    read_collapse_points,
    read_curve_csv,
    read_scaling_json,
    read_threshold_json,
)
from .plots import FigureSpec, plot_collapse, plot_curves

__version__ = "0.1.0"

__all__ = [
    "CurveData",
    "FigureSpec",
    "plot_collapse",
    "plot_curves",
    "read_collapse_points",
    "read_curve_csv",
    "read_scaling_json",
    "read_threshold_json",
]
