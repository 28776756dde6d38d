"""Reports: markdown summary, SVG plots and console tables."""

from csei.report.console import SummaryReporter
from csei.report.markdown import render_summary
from csei.report.plots import (
    plot_contributions,
    plot_cumulative,
    plot_index,
    plot_smoothed,
    write_plots,
)

__all__ = [
    "SummaryReporter",
    "plot_contributions",
    "plot_cumulative",
    "plot_index",
    "plot_smoothed",
    "render_summary",
    "write_plots",
]
